#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbdiam/forms.hpp"
#include "orbdiam/group.hpp"
#include "orbdiam/orbit.hpp"

namespace orbdiam {

enum class ActionCase { b, c, d };
enum class VertexKind { subspace, subspace_pair, quadratic_form };
enum class Strategy { automatic, invariant, stab_sample, pair_bfs };

std::string to_string(ActionCase c);
std::string to_string(VertexKind v);
std::string to_string(Strategy s);
ActionCase parse_case(const std::string& s);
Strategy parse_strategy(const std::string& s);

/// Parameters of a standard action. `q` is the field order, except for the
/// unitary families where it is q0 and the space lives over GF(q0^2).
struct ActionSpec {
  ActionCase action = ActionCase::b;
  Family family = Family::SL;
  int n = 0;
  std::uint32_t q = 2;
  Sign sign = Sign::none;
  int t = 1;
  SubspaceClass cls;
  Extensions ext;
  std::uint64_t budget = 5'000'000;  // orbit points
  std::string cache_dir;             // orbit cache directory; empty disables it
};

struct ActionInstance {
  ActionSpec spec;
  ClassicalSpace space;  // ambient space; symplectic for case d
  GeneratorSet gens;
  int k = 0;             // min(t, n - t)
  VertexKind kind = VertexKind::subspace;
  std::shared_ptr<const PointModel> model;
  Orbit orbit;
  /// Size of the whole subspace class (closed form) when known; |X| may be a proper part.
  std::optional<std::uint64_t> class_total;

  std::size_t size() const { return orbit.size(); }
  Subspace subspace(std::uint32_t v) const;
  std::pair<Subspace, Subspace> pair(std::uint32_t v) const;
  Vec form(std::uint32_t v) const;
  std::string describe(std::uint32_t v) const { return model->describe(orbit.code(v)); }
  std::optional<std::uint32_t> index_of(const Subspace& A) const;
  std::optional<std::uint32_t> index_of(const Subspace& U, const Subspace& W) const;
  std::string key() const;  // JSON action key
};

/// Throws std::invalid_argument for parameter combinations outside the standard actions.
ActionInstance make_action(const ActionSpec& spec);
/// Same construction with an explicit base vertex (a subspace for case b).
ActionInstance make_action_from(const ActionSpec& spec, const Subspace& base);

/// Standard representative of a subspace class: hyperbolic pairs e_i, f_i first,
/// then an anisotropic part. Throws std::invalid_argument when none is catalogued.
Subspace standard_representative(const ClassicalSpace& S, int k, const SubspaceClass& cls);

/// Complete orbital invariant on the proved cases; std::nullopt elsewhere.
std::optional<std::string> invariant_adjacency(const ActionInstance& A, std::uint32_t x, std::uint32_t y);
bool invariant_supported(const ActionInstance& A);

struct OrbitalGraph {
  std::uint32_t rep = 0;                // {base, rep} is the representative edge
  std::vector<std::uint32_t> nbrs;      // base neighbourhood (suborbit, or two paired suborbits)
  std::uint64_t edges = 0;
  std::optional<std::string> signature;
  std::vector<int> dist;                // distance from the base, -1 unreachable
  int diameter = 0;
  bool connected = true;
};

struct Checks {
  bool partition = true;
  bool connectivity = true;
  std::optional<bool> vertex_transitivity;  // nullopt when skipped on budget
  std::optional<bool> invariant_matches;    // invariant classes equal the computed orbitals
};

struct OrbitalResult {
  Strategy strategy = Strategy::pair_bfs;
  std::vector<OrbitalGraph> orbitals;
  Cells cells;
  std::vector<std::uint32_t> label;  // orbital of {base, y}
  Checks checks;
  bool exact = true;                 // false for sampled (exploration-grade) orbitals
  double runtime_ms = 0;

  std::size_t rank() const { return orbitals.size() + 1; }
  int diameter() const;  // max over orbitals, -1 if any is disconnected
};

struct EnumerateOptions {
  Strategy strategy = Strategy::automatic;
  std::uint64_t seed = 1;
  std::uint64_t pair_cap = 70'000;        // max |X| for pair BFS
  std::uint64_t transitivity_budget = 200'000'000;
  int transitivity_sources = 3;
  bool check_invariant = false;           // cross-check invariant classes against the result
};

/// Throws BudgetExceeded when the requested rung is infeasible and
/// std::invalid_argument when `invariant` is requested on an unproved case.
OrbitalResult orbitals_enumerate(const ActionInstance& A, const EnumerateOptions& opt = {});

nlohmann::ordered_json result_json(const ActionInstance& A, const OrbitalResult& R);

/// Orbital of the unordered pair {a, b}, read from the base labels of an exact partition.
std::uint32_t pair_label(const Orbit& X, const std::vector<std::uint32_t>& label, std::uint32_t a, std::uint32_t b);

/// The orbital graph through the edge {base, y}, exact (pair BFS, so |X| <= pair_cap).
/// `label` keeps the full pair-BFS partition for adjacency tests via pair_label.
struct EdgeOrbital {
  OrbitalGraph graph;
  std::vector<std::uint32_t> label;
  std::uint32_t id = 0;  // label of {base, y}
  bool adjacent(const Orbit& X, std::uint32_t a, std::uint32_t b) const {
    return a != b && pair_label(X, label, a, b) == id;
  }
};
EdgeOrbital orbital_through(const ActionInstance& A, std::uint32_t y, std::uint64_t pair_cap = 70'000,
                            std::uint64_t seed = 1);

/// max of the four intersection dimensions between two case-c vertices.
int pair_dim(const std::pair<Subspace, Subspace>& a, const std::pair<Subspace, Subspace>& b);

}  // namespace orbdiam
