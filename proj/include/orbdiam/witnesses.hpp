#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "orbdiam/forms.hpp"
#include "orbdiam/orbital.hpp"

namespace orbdiam {

/// Parameters outside a construction's or statement's hypotheses.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class WitnessId {
  psl_chain,
  sp_ts,
  sp_nd,
  su_nd,
  su_ts,
  o_plus_2l_small_k,
  o_plus_2l_half,
  o_minus_2l_minus_ambient,
  o_minus_2l_plus_ambient,
  o_odd_k_minus,
  o_odd_k_plus,
  o_ts,
  halfspin_WWW,
  o2minus_q1mod4,
  nd2_diam3,
  unitary_point_common_nbr,
  orth_point_common_nbr,
  qeven_point_common_nbr,
  case_c_elements,
  case_c_zero_pair,
};

std::string to_string(WitnessId id);
WitnessId parse_witness(const std::string& s);
const std::vector<WitnessId>& all_witness_ids();

using Scalars = std::map<std::string, Elem>;

/// Linear combination of basis labels such as "e1+zeta*e2-f2" or "2*x". Coefficients are
/// integers or names from `sc`; `extra` adds labels beyond e_i, f_i, x, y.
Vec parse_vector(const ClassicalSpace& S, std::string_view expr, const Scalars& sc = {},
                 const std::map<std::string, Vec>& extra = {});

/// Orthonormal basis of a nondegenerate unitary space, by greedy search in successive perps.
std::vector<Vec> orthonormal_basis(const ClassicalSpace& S);

/// A = A_0, A_1, ..., A_{k-r} = B with dim(A_i ∩ A_{i+1}) = k-1, where r = dim(A ∩ B):
/// bases of A and B extend a common basis of A ∩ B and the tail of A is swapped in one vector at a time.
std::vector<Subspace> psl_chain(const Subspace& A, const Subspace& B);

/// Fixed-point-free automorphism of GF(q)^t: companion matrix of the first monic degree-t
/// polynomial (lexicographic) with nonzero constant term and no root at 1. nullopt if none.
std::optional<Matrix> fixed_point_free_companion(const Field& F, int t);

struct WitnessParams {
  Family family = Family::Sp;
  int n = 0;
  std::uint32_t q = 2;  // q0 for the unitary families
  Sign sign = Sign::none;
  int l = 1;            // block size of the display: k, or k = 2l / 2l+1 for the orthogonal nd displays
  int t = 1;            // case c
  std::optional<std::uint32_t> lambda, mu, sigma;  // field elements by code
  std::uint64_t pair_cap = 30'000;                 // |X| limit for exact pair BFS
  std::uint64_t budget = 2'000'000;                // orbit points
};

/// Display checks type-check a literal transcription; claim checks test the mathematical
/// statement the construction supports (on a repaired stand-in when the literal fails).
struct PropertyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  bool display = false;
};

struct WitnessReport {
  std::string id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json vectors = nlohmann::ordered_json::object();
  std::vector<PropertyCheck> checks;
  nlohmann::ordered_json certificate = nlohmann::ordered_json::object();
  std::optional<nlohmann::ordered_json> repaired;  // computed stand-in when the literal display fails
  std::vector<std::string> notes;

  void check(std::string name, bool ok, std::string detail = {});
  void display(std::string name, bool ok, std::string detail = {});
  bool pass() const;        // every claim check
  bool display_ok() const;  // every display check
  const PropertyCheck* find(const std::string& name) const;
  nlohmann::ordered_json to_json() const;
};

/// Builds the construction, checks every property it claims, and measures distances where
/// |X| <= pair_cap. Throws HypothesisError when the construction's preconditions fail.
WitnessReport run_witness(WitnessId id, const WitnessParams& p);

struct WitnessInstance {
  WitnessId id;
  WitnessParams params;
};
/// Desk-scale instances covering every construction (q <= 3 except where the field must be larger).
std::vector<WitnessInstance> standard_witness_instances();

/// Candidate-span certificate for 2-spaces with U ∩ U'' = 0: a common neighbour W of U and U''
/// in the orbital {U, U'} meets each in a line, so W = <u, w> with u in U, w in U''. Counts the
/// spans that pass every necessary condition (same class as U, intersection lines of the type of
/// U ∩ U'); zero survivors certify d(U, U'') >= 3.
struct SpanCertificate {
  std::size_t candidates = 0;
  std::size_t survivors = 0;
  std::optional<Subspace> example;
  bool holds() const { return survivors == 0; }
};
SpanCertificate span_certificate(const ClassicalSpace& S, const Subspace& U, const Subspace& U1, const Subspace& U2);

/// Exact neighbourhood certificate in an action based at U: U2 is not adjacent to U and no
/// neighbour of U is adjacent to U2. `common` holds a common neighbour when one exists.
struct NeighbourCertificate {
  std::size_t checked = 0;
  bool adjacent_to_base = false;
  std::optional<std::uint32_t> common;
  bool holds() const { return !adjacent_to_base && !common; }
};
NeighbourCertificate neighbour_certificate(const ActionInstance& A, const EdgeOrbital& E, std::uint32_t z);

}  // namespace orbdiam
