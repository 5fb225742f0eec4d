#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbdiam/forms.hpp"
#include "orbdiam/linalg.hpp"

namespace orbdiam {

/// Right action on subspaces: A ↦ T(A)^φ · mat, where T is the dot-product
/// annihilator when `flip` is set and φ is coordinatewise a ↦ a^(p^frob).
/// Matrices are not rescaled: scalar multiples act identically on subspaces but
/// not on forms, so projective identification happens only in projective_key().
struct GroupElement {
  Matrix mat;
  std::uint32_t frob = 0;
  bool flip = false;

  static GroupElement identity(int n);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// a then b.
GroupElement compose(const Field& F, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const Field& F, const GroupElement& g);
/// v ↦ φ(v)·mat; g must not carry the flip.
Vec apply_vector(const Field& F, const Vec& v, const GroupElement& g);
Subspace apply_element(const Subspace& A, const GroupElement& g);
/// Canonical key up to scalars: matrix scaled so its first nonzero entry is 1.
std::vector<std::uint32_t> projective_key(const Field& F, const GroupElement& g);

struct Extensions {
  bool field_auto = false;
  bool graph_auto = false;
};

struct GeneratorSet {
  Family family = Family::SL;
  ClassicalSpace space;
  Extensions ext;
  std::vector<GroupElement> gens;
  std::vector<std::string> names;
};

/// Natural space of a family: linear for SL, symplectic for Sp, unitary over
/// GF(q0^2) for SU/GU, quadratic of the given sign for GO/Omega.
ClassicalSpace natural_space(Family family, int n, const Field& F, Sign sign);

/// Catalogued generators; verifies preservation of the form on basis pairs and
/// throws std::invalid_argument for unsupported parameters.
GeneratorSet generator_catalog(Family family, const ClassicalSpace& space, Extensions ext = {});

/// f(ug, vg) = f(u, v)^φ and Q(vg) = Q(v)^φ on all basis vectors (det 1 for SL).
bool preserves_form(const ClassicalSpace& S, Family family, const GroupElement& g);

/// Eichler–Siegel map x ↦ x + f(x,v)u − f(x,u)v − Q(v)f(x,u)u.
GroupElement eichler_siegel(const ClassicalSpace& S, const Vec& u, const Vec& v);

/// F_p-basis {1, ω, ..., ω^(e-1)} of F, ω the fixed primitive element.
std::vector<Elem> prime_field_basis(const Field& F);

}  // namespace orbdiam
