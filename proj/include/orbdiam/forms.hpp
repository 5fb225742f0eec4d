#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbdiam/field.hpp"
#include "orbdiam/linalg.hpp"

namespace orbdiam {

enum class FormKind { linear, symplectic, unitary, quadratic };
/// Orthogonal type; `none` for non-quadratic spaces.
enum class Sign { none, plus, minus, odd };

std::string to_string(FormKind k);
std::string to_string(Sign s);
FormKind parse_form_kind(const std::string& s);
Sign parse_sign(const std::string& s);

/// V_n(q) with a form in standard coordinates. Coordinates are ordered
/// e_1..e_m, f_1..f_m, then x (odd n, or minus type), then y (minus type).
/// Unitary spaces live over GF(q0^2) and carry GF(q0) as `sub`.
struct ClassicalSpace {
  VectorSpaceSpec V;
  FormKind kind = FormKind::linear;
  Sign sign = Sign::none;
  int pairs = 0;          // number of hyperbolic pairs (e_i, f_i)
  Matrix gram;            // f(u, v) = u * gram * conj(v)^T
  Matrix qmat;            // Q(v) = sum_{i <= j} v_i * qmat(i, j) * v_j, upper triangular
  std::optional<Elem> zeta;
  std::optional<Field> sub;

  const Field& field() const { return V.field; }
  int n() const { return V.n; }
  bool has_x() const;
  bool has_y() const;
  int e_index(int i) const;
  int f_index(int i) const;
  int x_index() const;
  int y_index() const;
  /// Basis vectors by 1-based label index.
  Vec e(int i) const;
  Vec f(int i) const;
  Vec x() const;
  Vec y() const;
  Vec zero_vec() const { return Vec(n()); }
  std::vector<std::string> labels() const;
  /// Parses "e1", "f3", "x", "y".
  Vec basis_vector(const std::string& label) const;
  /// JSON object {kind, n, p, e, epsilon, zeta}.
  std::string key() const;
};

/// Throws std::invalid_argument for inconsistent (kind, n, field, sign), including
/// odd-dimensional quadratic spaces in characteristic 2.
ClassicalSpace make_space(FormKind kind, int n, const Field& F, Sign sign = Sign::none);

/// Symplectic space carrying an extra quadratic form polarizing to its gram.
/// `diag` holds Q(b_i) on the standard basis.
ClassicalSpace with_quadratic_diag(const ClassicalSpace& symplectic, const Vec& diag);

Elem eval_form(const ClassicalSpace& S, const Vec& u, const Vec& v);
Elem eval_q(const ClassicalSpace& S, const Vec& v);
/// Quadratic form given by an upper-triangular coefficient matrix.
Elem eval_qmat(const Field& F, const Matrix& qmat, const Vec& v);

struct PerpRadical {
  Subspace perp;
  Subspace radical;
};
PerpRadical perp_radical(const ClassicalSpace& S, const Subspace& A);

enum class SubspaceTag { any, totally_singular, nondegenerate, nonsingular_point, degenerate_other };
enum class SubType { na, plus, minus, odd };

std::string to_string(SubspaceTag t);
std::string to_string(SubType t);
SubspaceTag parse_tag(const std::string& s);
SubType parse_subtype(const std::string& s);

/// `disc` is the square class (0 square, 1 non-square) of det of the restricted
/// bilinear gram for nondegenerate quadratic subspaces with q odd, else -1.
struct SubspaceClass {
  SubspaceTag tag = SubspaceTag::any;
  SubType subtype = SubType::na;
  int disc = -1;

  friend bool operator==(const SubspaceClass&, const SubspaceClass&) = default;
  std::string str() const;
};

SubspaceClass classify_subspace(const ClassicalSpace& S, const Subspace& A);
/// True when `actual` satisfies `wanted`; a wanted disc of -1 accepts both classes.
bool class_matches(const SubspaceClass& wanted, const SubspaceClass& actual);

/// Dimension of a maximal totally singular subspace of A (whole space when absent).
/// Greedy extension is exact on nondegenerate spaces; degenerate restrictions and
/// `exhaustive` use a complete search.
int witt_index(const ClassicalSpace& S, const std::optional<Subspace>& A = std::nullopt, bool exhaustive = false);

/// Restricted gram of f on the rows of a basis.
Matrix restricted_gram(const ClassicalSpace& S, const Matrix& basis);

/// Number of vectors v with Q(v) = c, for each c in [0, q).
std::vector<std::uint64_t> count_vectors_by_q(const ClassicalSpace& S);

/// Closed-form |{A : dim A = k, class_matches(cls, classify(A))}|.
/// Throws std::invalid_argument ("enumerate instead") for unsupported combinations.
std::uint64_t predict_counts(const ClassicalSpace& S, const SubspaceClass& cls, int k);

enum class Family { SL, Sp, SU, GU, GO, Omega };
std::string to_string(Family f);
Family parse_family(const std::string& s);

/// Group orders. `q` is the field order for all families except SU/GU, where it is q0.
/// Throws std::overflow_error past 128 bits and std::invalid_argument for unsupported input.
unsigned __int128 order_gl(int n, std::uint64_t q);
unsigned __int128 order_sp(int n, std::uint64_t q);
unsigned __int128 order_gu(int n, std::uint64_t q0);
unsigned __int128 order_go(int n, std::uint64_t q, Sign sign);
unsigned __int128 expected_order(Family family, int n, std::uint64_t q, Sign sign = Sign::none);
std::string to_string_u128(unsigned __int128 v);

/// Form type of a quadratic form polarizing to a symplectic gram (q even):
/// plus iff its Witt index is n/2. Throws std::invalid_argument on polarization mismatch.
Sign arf_invariant(const ClassicalSpace& symplectic, const Vec& diag);

/// True when Q(u + v) = Q(u) + Q(v) + f(u, v) on all basis pairs.
bool polarizes(const ClassicalSpace& S);

}  // namespace orbdiam
