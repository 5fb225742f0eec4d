#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbdiam/field.hpp"

namespace orbdiam {

using Vec = std::vector<Elem>;

/// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Elem& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::span<Elem> row(int r) { return {a_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const Elem> row(int r) const {
    return {a_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  Vec row_vec(int r) const { return Vec(row(r).begin(), row(r).end()); }
  const std::vector<Elem>& data() const { return a_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

Matrix mat_mul(const Field& F, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// Elementwise a ↦ a^(p^k).
Matrix frobenius(const Field& F, const Matrix& a, std::uint32_t k);
std::optional<Matrix> inverse(const Field& F, const Matrix& a);
Elem determinant(const Field& F, Matrix a);
/// Reduced row-echelon form with zero rows dropped.
Matrix rref(const Field& F, Matrix a);
/// Basis (in RREF) of {v : a * v^T = 0}, i.e. the right kernel as row vectors.
Matrix nullspace(const Field& F, const Matrix& a);
int rank(const Field& F, const Matrix& a);

Vec vec_add(const Field& F, const Vec& a, const Vec& b);
Vec vec_scale(const Field& F, Elem c, const Vec& a);
/// Row vector times matrix.
Vec vec_mul(const Field& F, const Vec& v, const Matrix& m);
Elem dot(const Field& F, const Vec& a, const Vec& b);
bool is_zero(const Vec& v);
/// i-th standard basis vector of length n.
Vec unit_vec(int n, int i);

/// V_n(q).
struct VectorSpaceSpec {
  Field field;
  int n = 0;

  VectorSpaceSpec() = default;
  VectorSpaceSpec(Field f, int dim);
};

/// Code of a subspace: word 0 holds the dimension, the remaining words pack
/// the RREF basis row-major, ceil(log2 q) bits per element, most significant
/// bits first. Lexicographic word order equals (dim, row-major element) order.
struct SubspaceCode {
  std::vector<std::uint64_t> words;

  friend bool operator==(const SubspaceCode&, const SubspaceCode&) = default;
  friend auto operator<=>(const SubspaceCode&, const SubspaceCode&) = default;
};

int element_bits(std::uint32_t q);
std::size_t code_words(int k, int n, std::uint32_t q);

/// A subspace of V_n(q) held by its canonical RREF basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const VectorSpaceSpec& V, const std::vector<Vec>& rows);
  static Subspace zero(const VectorSpaceSpec& V);
  static Subspace whole(const VectorSpaceSpec& V);
  /// Takes ownership of a matrix already in RREF with no zero rows.
  static Subspace from_rref(const VectorSpaceSpec& V, Matrix basis);
  /// Throws std::invalid_argument for malformed codes.
  static Subspace decode(const VectorSpaceSpec& V, const SubspaceCode& code);

  const VectorSpaceSpec& ambient() const { return V_; }
  const Field& field() const { return V_.field; }
  int dim() const { return basis_.rows(); }
  int n() const { return V_.n; }
  const Matrix& basis() const { return basis_; }
  std::vector<Vec> rows() const;
  bool contains(const Vec& v) const;
  /// All nonzero vectors up to scalars (one representative per 1-space, first nonzero = 1).
  std::vector<Vec> points() const;
  /// Every vector of the subspace (q^dim of them).
  std::vector<Vec> vectors() const;
  SubspaceCode encode() const;
  std::string str() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  VectorSpaceSpec V_;
  Matrix basis_;
};

Subspace meet(const Subspace& a, const Subspace& b);
Subspace join(const Subspace& a, const Subspace& b);
/// {v : v . u = 0 for all u in a} under the standard dot product.
Subspace annihilator(const Subspace& a);

/// Gaussian binomial [n choose k]_q; throws std::overflow_error past 64 bits.
std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q);

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t needed)
      : std::runtime_error(what), needed_(needed) {}
  std::uint64_t needed() const { return needed_; }

 private:
  std::uint64_t needed_;
};

/// Every k-subspace (optionally filtered) in code order.
/// Throws BudgetExceeded (carrying the Gaussian binomial) when the count exceeds budget.
std::vector<Subspace> enumerate_subspaces(const VectorSpaceSpec& V, int k,
                                          const std::function<bool(const Subspace&)>& filter = {},
                                          std::uint64_t budget = 5'000'000);

}  // namespace orbdiam
