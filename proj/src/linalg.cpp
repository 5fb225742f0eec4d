#include "orbdiam/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace orbdiam {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Elem{1};
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix mat_mul(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      Elem s = a.at(i, k);
      if (s.value == 0) continue;
      auto br = b.row(k);
      for (int j = 0; j < b.cols(); ++j) out[j] = F.add(out[j], F.mul(s, br[j]));
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  return t;
}

Matrix frobenius(const Field& F, const Matrix& a, std::uint32_t k) {
  if (k % F.degree() == 0) return a;
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = F.frobenius(a.at(i, j), k);
  return r;
}

namespace {

// In-place elimination; returns pivot columns. Rows past the rank are zero.
std::vector<int> eliminate(const Field& F, Matrix& a, int col_limit) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < col_limit && r < a.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c).value != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) std::swap_ranges(a.row(sel).begin(), a.row(sel).end(), a.row(r).begin());
    Elem inv = F.inv(a.at(r, c));
    if (inv.value != 1)
      for (auto& x : a.row(r)) x = F.mul(x, inv);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      Elem f = a.at(i, c);
      if (f.value == 0) continue;
      Elem nf = F.neg(f);
      auto src = a.row(r);
      auto dst = a.row(i);
      for (int j = c; j < a.cols(); ++j)
        if (src[j].value != 0) dst[j] = F.add(dst[j], F.mul(nf, src[j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Matrix take_rows(const Matrix& a, int k) {
  Matrix r(k, a.cols());
  for (int i = 0; i < k; ++i) std::copy(a.row(i).begin(), a.row(i).end(), r.row(i).begin());
  return r;
}

}  // namespace

Matrix rref(const Field& F, Matrix a) {
  auto piv = eliminate(F, a, a.cols());
  return take_rows(a, static_cast<int>(piv.size()));
}

int rank(const Field& F, const Matrix& a) {
  Matrix c = a;
  return static_cast<int>(eliminate(F, c, c.cols()).size());
}

Matrix nullspace(const Field& F, const Matrix& a) {
  Matrix r = a;
  auto piv = eliminate(F, r, r.cols());
  int n = a.cols();
  std::vector<char> is_pivot(n, 0);
  for (int c : piv) is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (int fcol = 0; fcol < n; ++fcol) {
    if (is_pivot[fcol]) continue;
    Vec v(n);
    v[fcol] = Elem{1};
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(r.at(static_cast<int>(i), fcol));
    basis.push_back(std::move(v));
  }
  return rref(F, Matrix::from_rows(basis, n));
}

std::optional<Matrix> inverse(const Field& F, const Matrix& a) {
  int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: non-square matrix");
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Elem{1};
  }
  auto piv = eliminate(F, aug, n);
  if (static_cast<int>(piv.size()) < n) return std::nullopt;
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

Elem determinant(const Field& F, Matrix a) {
  int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: non-square matrix");
  Elem det = F.one();
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (a.at(i, c).value != 0) {
        sel = i;
        break;
      }
    if (sel < 0) return F.zero();
    if (sel != c) {
      std::swap_ranges(a.row(sel).begin(), a.row(sel).end(), a.row(c).begin());
      det = F.neg(det);
    }
    Elem pv = a.at(c, c);
    det = F.mul(det, pv);
    Elem inv = F.inv(pv);
    for (int i = c + 1; i < n; ++i) {
      Elem f = F.neg(F.mul(a.at(i, c), inv));
      if (f.value == 0) continue;
      for (int j = c; j < n; ++j) a.at(i, j) = F.add(a.at(i, j), F.mul(f, a.at(c, j)));
    }
  }
  return det;
}

Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Vec vec_scale(const Field& F, Elem c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
  return r;
}

Vec vec_mul(const Field& F, const Vec& v, const Matrix& m) {
  Vec r(m.cols());
  for (int k = 0; k < m.rows(); ++k) {
    if (v[k].value == 0) continue;
    auto mr = m.row(k);
    for (int j = 0; j < m.cols(); ++j) r[j] = F.add(r[j], F.mul(v[k], mr[j]));
  }
  return r;
}

Elem dot(const Field& F, const Vec& a, const Vec& b) {
  Elem s{0};
  for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x.value == 0; });
}

VectorSpaceSpec::VectorSpaceSpec(Field f, int dim) : field(std::move(f)), n(dim) {
  if (!field.valid()) throw std::invalid_argument("VectorSpaceSpec: invalid field");
  if (n < 2 || n > 16) throw std::invalid_argument("VectorSpaceSpec: n must lie in [2, 16]");
}

int element_bits(std::uint32_t q) {
  int b = 0;
  while ((std::uint64_t{1} << b) < q) ++b;
  return std::max(b, 1);
}

std::size_t code_words(int k, int n, std::uint32_t q) {
  std::size_t per = 64 / element_bits(q);
  std::size_t cells = static_cast<std::size_t>(k) * n;
  return 1 + (cells + per - 1) / per;
}

Subspace Subspace::span(const VectorSpaceSpec& V, const std::vector<Vec>& rows) {
  Subspace s;
  s.V_ = V;
  s.basis_ = rows.empty() ? Matrix(0, V.n) : rref(V.field, Matrix::from_rows(rows, V.n));
  return s;
}

Subspace Subspace::zero(const VectorSpaceSpec& V) { return span(V, {}); }

Subspace Subspace::whole(const VectorSpaceSpec& V) {
  Subspace s;
  s.V_ = V;
  s.basis_ = Matrix::identity(V.n);
  return s;
}

Subspace Subspace::from_rref(const VectorSpaceSpec& V, Matrix basis) {
  Subspace s;
  s.V_ = V;
  s.basis_ = std::move(basis);
  return s;
}

std::vector<Vec> Subspace::rows() const {
  std::vector<Vec> r;
  for (int i = 0; i < dim(); ++i) r.push_back(basis_.row_vec(i));
  return r;
}

bool Subspace::contains(const Vec& v) const {
  Matrix m(dim() + 1, n());
  for (int i = 0; i < dim(); ++i) std::copy(basis_.row(i).begin(), basis_.row(i).end(), m.row(i).begin());
  std::copy(v.begin(), v.end(), m.row(dim()).begin());
  return rank(field(), m) == dim();
}

std::vector<Vec> Subspace::vectors() const {
  const Field& F = field();
  std::uint32_t q = F.order();
  int k = dim();
  std::vector<Vec> out;
  std::vector<std::uint32_t> c(k, 0);
  while (true) {
    Vec v(n());
    for (int i = 0; i < k; ++i)
      if (c[i]) {
        auto r = basis_.row(i);
        for (int j = 0; j < n(); ++j) v[j] = F.add(v[j], F.mul(Elem{c[i]}, r[j]));
      }
    out.push_back(std::move(v));
    int i = 0;
    while (i < k && ++c[i] == q) c[i++] = 0;
    if (i == k) break;
  }
  return out;
}

std::vector<Vec> Subspace::points() const {
  std::vector<Vec> out;
  for (auto& v : vectors()) {
    auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x.value != 0; });
    if (it != v.end() && it->value == 1) out.push_back(std::move(v));
  }
  return out;
}

SubspaceCode Subspace::encode() const {
  int b = element_bits(field().order());
  int per = 64 / b;
  SubspaceCode c;
  c.words.assign(code_words(dim(), n(), field().order()), 0);
  c.words[0] = static_cast<std::uint64_t>(dim());
  const auto& d = basis_.data();
  for (std::size_t idx = 0; idx < d.size(); ++idx) {
    std::size_t w = 1 + idx / per;
    int slot = static_cast<int>(idx % per);
    c.words[w] |= static_cast<std::uint64_t>(d[idx].value) << (64 - b * (slot + 1));
  }
  return c;
}

Subspace Subspace::decode(const VectorSpaceSpec& V, const SubspaceCode& code) {
  if (code.words.empty()) throw std::invalid_argument("decode: empty code");
  std::uint64_t k = code.words[0];
  if (k > static_cast<std::uint64_t>(V.n)) throw std::invalid_argument("decode: dimension exceeds n");
  std::uint32_t q = V.field.order();
  if (code.words.size() != code_words(static_cast<int>(k), V.n, q))
    throw std::invalid_argument("decode: wrong code length");
  int b = element_bits(q);
  int per = 64 / b;
  std::uint64_t mask = (b == 64) ? ~0ULL : ((1ULL << b) - 1);
  Matrix m(static_cast<int>(k), V.n);
  std::size_t cells = k * V.n;
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::size_t w = 1 + idx / per;
    int slot = static_cast<int>(idx % per);
    std::uint64_t val = (code.words[w] >> (64 - b * (slot + 1))) & mask;
    if (val >= q) throw std::invalid_argument("decode: element out of range");
    m.at(static_cast<int>(idx / V.n), static_cast<int>(idx % V.n)) = Elem{static_cast<std::uint32_t>(val)};
  }
  Subspace s = from_rref(V, m);
  if (rref(V.field, m) != m || s.encode() != code) throw std::invalid_argument("decode: not a canonical RREF code");
  return s;
}

std::string Subspace::str() const {
  std::ostringstream os;
  os << "<";
  for (int i = 0; i < dim(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < n(); ++j) os << (j ? " " : "") << basis_.at(i, j).value;
  }
  os << ">";
  return os.str();
}

Subspace meet(const Subspace& a, const Subspace& b) {
  // Zassenhaus: rows (a, a) and (b, 0); the rows whose left half vanishes span the meet.
  const Field& F = a.field();
  int n = a.n();
  Matrix z(a.dim() + b.dim(), 2 * n);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < n; ++j) z.at(i, j) = z.at(i, n + j) = a.basis().at(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < n; ++j) z.at(a.dim() + i, j) = b.basis().at(i, j);
  Matrix r = rref(F, z);
  std::vector<Vec> rows;
  for (int i = 0; i < r.rows(); ++i) {
    bool left_zero = true;
    for (int j = 0; j < n && left_zero; ++j) left_zero = r.at(i, j).value == 0;
    if (left_zero) rows.emplace_back(r.row(i).begin() + n, r.row(i).end());
  }
  return Subspace::span(a.ambient(), rows);
}

Subspace join(const Subspace& a, const Subspace& b) {
  auto rows = a.rows();
  auto rb = b.rows();
  rows.insert(rows.end(), rb.begin(), rb.end());
  return Subspace::span(a.ambient(), rows);
}

Subspace annihilator(const Subspace& a) {
  if (a.dim() == 0) return Subspace::whole(a.ambient());
  return Subspace::from_rref(a.ambient(), nullspace(a.field(), a.basis()));
}

std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  auto qpow = [&](int e) {
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) {
      r *= q;
      if (r >> 64) throw std::overflow_error("gaussian_binomial: overflow");
    }
    return r;
  };
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) {
    unsigned __int128 num = qpow(n - i) - 1;
    unsigned __int128 den = qpow(i + 1) - 1;
    // r = [n, i]; r * num is divisible by den.
    unsigned __int128 prod = r * num;
    if (num != 0 && prod / num != r) throw std::overflow_error("gaussian_binomial: overflow");
    r = prod / den;
    if (r >> 64) throw std::overflow_error("gaussian_binomial: overflow");
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<Subspace> enumerate_subspaces(const VectorSpaceSpec& V, int k,
                                          const std::function<bool(const Subspace&)>& filter,
                                          std::uint64_t budget) {
  if (k < 0 || k > V.n) throw std::invalid_argument("enumerate_subspaces: k out of range");
  std::uint32_t q = V.field.order();
  std::uint64_t total = 0;
  try {
    total = gaussian_binomial(V.n, k, q);
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("enumerate_subspaces: count overflows 64 bits", ~0ULL);
  }
  if (total > budget)
    throw BudgetExceeded("enumerate_subspaces: " + std::to_string(total) + " subspaces exceed budget " +
                             std::to_string(budget),
                         total);

  std::vector<Subspace> out;
  int n = V.n;
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // Free cells: row i, column j > piv[i], j not a pivot.
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) cells.emplace_back(i, j);
    Matrix m(k, n);
    for (int i = 0; i < k; ++i) m.at(i, piv[i]) = Elem{1};
    std::vector<std::uint32_t> c(cells.size(), 0);
    while (true) {
      for (std::size_t t = 0; t < cells.size(); ++t) m.at(cells[t].first, cells[t].second) = Elem{c[t]};
      Subspace s = Subspace::from_rref(V, m);
      if (!filter || filter(s)) out.push_back(std::move(s));
      std::size_t t = 0;
      while (t < c.size() && ++c[t] == q) c[t++] = 0;
      if (t == c.size()) break;
    }
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::vector<std::pair<SubspaceCode, std::size_t>> keyed;
  keyed.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) keyed.emplace_back(out[i].encode(), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Subspace> sorted;
  sorted.reserve(out.size());
  for (auto& [code, i] : keyed) sorted.push_back(std::move(out[i]));
  return sorted;
}

Vec unit_vec(int n, int i) {
  Vec v(n);
  v[i] = Elem{1};
  return v;
}

}  // namespace orbdiam
