#pragma once

#include <cstdint>
#include <vector>

#include "orbdiam/forms.hpp"
#include "orbdiam/group.hpp"
#include "orbdiam/linalg.hpp"

namespace orbdiam {

/// Every element of a classical group on a tiny space, built without the
/// generator catalog: isometries by a row-by-row search over images of the
/// standard basis, then filtered (det 1 for SL/SU). Omega is the closure of
/// r_u r_v over nonsingular u, v with Q(u)Q(v) a square (q odd), or the
/// isometries of even Dickson invariant rank(g - 1) mod 2 (q even).
/// Throws BudgetExceeded past `cap` elements.
std::vector<GroupElement> oracle_group(Family family, const ClassicalSpace& S, std::size_t cap = 500'000);

/// Closure of a generator list under composition.
std::vector<GroupElement> group_closure(const Field& F, const std::vector<GroupElement>& gens, std::size_t cap = 500'000);

/// Orbitals of a group given by its full element list, computed pair by pair.
struct BruteOrbitals {
  std::vector<Subspace> points;          // orbit of the base, in code order
  std::vector<std::pair<Subspace, Subspace>> pairs;  // pair orbit instead, for brute_pair_orbitals
  std::vector<std::uint64_t> edges;      // unordered pairs per orbital
  std::vector<int> diameters;            // -1 when disconnected
  std::vector<std::vector<int>> label;   // label[i][j], -1 on the diagonal
};
BruteOrbitals brute_orbitals(const std::vector<GroupElement>& group, const Subspace& base);
/// Same on unordered pairs {U, W}; `group` may contain flip elements.
BruteOrbitals brute_pair_orbitals(const std::vector<GroupElement>& group, const Subspace& U, const Subspace& W);

}  // namespace orbdiam
