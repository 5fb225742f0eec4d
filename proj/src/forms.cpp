#include "orbdiam/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace orbdiam {

namespace {

using u128 = unsigned __int128;

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > (~static_cast<u128>(0)) / a) throw std::overflow_error("group order overflows 128 bits");
  return a * b;
}

u128 upow(std::uint64_t q, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, q);
  return r;
}

Elem conj_if(const ClassicalSpace& S, Elem a) {
  return S.kind == FormKind::unitary ? conjugate(S.field(), a) : a;
}

std::uint64_t to_u64(u128 v) {
  if (v >> 64) throw std::overflow_error("count overflows 64 bits");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::linear: return "linear";
    case FormKind::symplectic: return "symplectic";
    case FormKind::unitary: return "unitary";
    case FormKind::quadratic: return "quadratic";
  }
  return "?";
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::none: return "none";
    case Sign::plus: return "+";
    case Sign::minus: return "-";
    case Sign::odd: return "o";
  }
  return "?";
}

FormKind parse_form_kind(const std::string& s) {
  if (s == "linear") return FormKind::linear;
  if (s == "symplectic") return FormKind::symplectic;
  if (s == "unitary") return FormKind::unitary;
  if (s == "quadratic") return FormKind::quadratic;
  throw std::invalid_argument("unknown form kind: " + s);
}

Sign parse_sign(const std::string& s) {
  if (s == "none" || s.empty()) return Sign::none;
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  if (s == "o" || s == "odd" || s == "0") return Sign::odd;
  throw std::invalid_argument("unknown sign: " + s);
}

bool ClassicalSpace::has_x() const { return n() - 2 * pairs >= 1; }
bool ClassicalSpace::has_y() const { return n() - 2 * pairs >= 2; }

int ClassicalSpace::e_index(int i) const {
  if (i < 1 || i > pairs) throw std::out_of_range("e_" + std::to_string(i) + " not in basis");
  return i - 1;
}

int ClassicalSpace::f_index(int i) const {
  if (i < 1 || i > pairs) throw std::out_of_range("f_" + std::to_string(i) + " not in basis");
  return pairs + i - 1;
}

int ClassicalSpace::x_index() const {
  if (!has_x()) throw std::out_of_range("x not in basis");
  return 2 * pairs;
}

int ClassicalSpace::y_index() const {
  if (!has_y()) throw std::out_of_range("y not in basis");
  return 2 * pairs + 1;
}

Vec ClassicalSpace::e(int i) const { return unit_vec(n(), e_index(i)); }
Vec ClassicalSpace::f(int i) const { return unit_vec(n(), f_index(i)); }
Vec ClassicalSpace::x() const { return unit_vec(n(), x_index()); }
Vec ClassicalSpace::y() const { return unit_vec(n(), y_index()); }

std::vector<std::string> ClassicalSpace::labels() const {
  std::vector<std::string> out;
  if (kind == FormKind::linear) {
    for (int i = 1; i <= n(); ++i) out.push_back("e" + std::to_string(i));
    return out;
  }
  for (int i = 1; i <= pairs; ++i) out.push_back("e" + std::to_string(i));
  for (int i = 1; i <= pairs; ++i) out.push_back("f" + std::to_string(i));
  if (has_x()) out.push_back("x");
  if (has_y()) out.push_back("y");
  return out;
}

Vec ClassicalSpace::basis_vector(const std::string& label) const {
  auto ls = labels();
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) throw std::out_of_range("unknown basis label " + label);
  return unit_vec(n(), static_cast<int>(it - ls.begin()));
}

std::string ClassicalSpace::key() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  j["n"] = n();
  j["p"] = field().characteristic();
  j["e"] = field().degree();
  j["epsilon"] = to_string(sign);
  if (zeta)
    j["zeta"] = zeta->value;
  else
    j["zeta"] = nullptr;
  return j.dump();
}

ClassicalSpace make_space(FormKind kind, int n, const Field& F, Sign sign) {
  ClassicalSpace S;
  S.V = VectorSpaceSpec(F, n);
  S.kind = kind;
  S.sign = sign;
  S.gram = Matrix(n, n);
  S.qmat = Matrix(n, n);
  const Elem one = F.one();
  switch (kind) {
    case FormKind::linear:
      if (sign != Sign::none) throw std::invalid_argument("linear space takes no sign");
      S.pairs = 0;
      break;
    case FormKind::symplectic:
      if (sign != Sign::none) throw std::invalid_argument("symplectic space takes no sign");
      if (n % 2) throw std::invalid_argument("symplectic space needs even n");
      S.pairs = n / 2;
      for (int i = 0; i < S.pairs; ++i) {
        S.gram.at(i, S.pairs + i) = one;
        S.gram.at(S.pairs + i, i) = F.neg(one);
      }
      break;
    case FormKind::unitary: {
      if (sign != Sign::none) throw std::invalid_argument("unitary space takes no sign");
      if (F.degree() % 2) throw std::invalid_argument("unitary space needs a field of square order");
      S.sub = Field::make(F.characteristic(), F.degree() / 2);
      S.pairs = n / 2;
      for (int i = 0; i < S.pairs; ++i) S.gram.at(i, S.pairs + i) = S.gram.at(S.pairs + i, i) = one;
      if (n % 2) S.gram.at(n - 1, n - 1) = one;
      break;
    }
    case FormKind::quadratic: {
      if (sign == Sign::odd) {
        if (n % 2 == 0) throw std::invalid_argument("odd-type quadratic space needs odd n");
        if (F.characteristic() == 2)
          throw std::invalid_argument("odd-dimensional quadratic spaces in characteristic 2 are not supported");
        S.pairs = n / 2;
      } else if (sign == Sign::plus) {
        if (n % 2) throw std::invalid_argument("plus-type quadratic space needs even n");
        S.pairs = n / 2;
      } else if (sign == Sign::minus) {
        if (n % 2) throw std::invalid_argument("minus-type quadratic space needs even n");
        S.pairs = n / 2 - 1;
      } else {
        throw std::invalid_argument("quadratic space needs a sign");
      }
      for (int i = 0; i < S.pairs; ++i) S.qmat.at(i, S.pairs + i) = one;
      if (sign == Sign::odd) S.qmat.at(n - 1, n - 1) = one;
      if (sign == Sign::minus) {
        S.zeta = special_param(F, SpecialParam::zeta);
        int xi = 2 * S.pairs, yi = xi + 1;
        S.qmat.at(xi, xi) = one;
        S.qmat.at(yi, yi) = *S.zeta;
        S.qmat.at(xi, yi) = one;
      }
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Elem c = S.qmat.at(i, j);
          if (i == j) {
            S.gram.at(i, i) = F.add(c, c);
          } else {
            S.gram.at(i, j) = c;
            S.gram.at(j, i) = c;
          }
        }
      break;
    }
  }
  return S;
}

ClassicalSpace with_quadratic_diag(const ClassicalSpace& symplectic, const Vec& diag) {
  if (symplectic.kind != FormKind::symplectic) throw std::invalid_argument("with_quadratic_diag: need a symplectic space");
  const Field& F = symplectic.field();
  if (F.characteristic() != 2) throw std::invalid_argument("with_quadratic_diag: q must be even");
  if (static_cast<int>(diag.size()) != symplectic.n()) throw std::invalid_argument("with_quadratic_diag: wrong length");
  ClassicalSpace S = symplectic;
  S.kind = FormKind::quadratic;
  S.qmat = Matrix(S.n(), S.n());
  for (int i = 0; i < S.n(); ++i) {
    S.qmat.at(i, i) = diag[i];
    for (int j = i + 1; j < S.n(); ++j) S.qmat.at(i, j) = symplectic.gram.at(i, j);
  }
  S.sign = Sign::plus;
  S.sign = witt_index(S) * 2 == S.n() ? Sign::plus : Sign::minus;
  S.zeta.reset();
  return S;
}

Elem eval_form(const ClassicalSpace& S, const Vec& u, const Vec& v) {
  if (S.kind == FormKind::linear) throw std::invalid_argument("eval_form: linear space has no form");
  const Field& F = S.field();
  Elem s{0};
  for (int i = 0; i < S.n(); ++i) {
    if (u[i].value == 0) continue;
    for (int j = 0; j < S.n(); ++j) {
      Elem g = S.gram.at(i, j);
      if (g.value == 0 || v[j].value == 0) continue;
      s = F.add(s, F.mul(F.mul(u[i], g), conj_if(S, v[j])));
    }
  }
  return s;
}

Elem eval_qmat(const Field& F, const Matrix& qmat, const Vec& v) {
  Elem s{0};
  int n = qmat.rows();
  for (int i = 0; i < n; ++i) {
    if (v[i].value == 0) continue;
    Elem acc{0};
    for (int j = i; j < n; ++j) {
      Elem c = qmat.at(i, j);
      if (c.value && v[j].value) acc = F.add(acc, F.mul(c, v[j]));
    }
    s = F.add(s, F.mul(v[i], acc));
  }
  return s;
}

Elem eval_q(const ClassicalSpace& S, const Vec& v) {
  if (S.kind != FormKind::quadratic) throw std::invalid_argument("eval_q: not a quadratic space");
  return eval_qmat(S.field(), S.qmat, v);
}

PerpRadical perp_radical(const ClassicalSpace& S, const Subspace& A) {
  if (S.kind == FormKind::linear) throw std::invalid_argument("perp_radical: linear space has no form");
  if (A.dim() == 0) return {Subspace::whole(S.V), Subspace::zero(S.V)};
  Matrix m = mat_mul(S.field(), A.basis(), S.gram);
  if (S.kind == FormKind::unitary)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = conjugate(S.field(), m.at(i, j));
  Subspace perp = Subspace::from_rref(S.V, nullspace(S.field(), m));
  return {perp, meet(A, perp)};
}

std::string to_string(SubspaceTag t) {
  switch (t) {
    case SubspaceTag::any: return "any";
    case SubspaceTag::totally_singular: return "ts";
    case SubspaceTag::nondegenerate: return "nd";
    case SubspaceTag::nonsingular_point: return "nsp";
    case SubspaceTag::degenerate_other: return "degenerate";
  }
  return "?";
}

std::string to_string(SubType t) {
  switch (t) {
    case SubType::na: return "na";
    case SubType::plus: return "+";
    case SubType::minus: return "-";
    case SubType::odd: return "odd";
  }
  return "?";
}

SubspaceTag parse_tag(const std::string& s) {
  if (s == "any") return SubspaceTag::any;
  if (s == "ts" || s == "totally_singular") return SubspaceTag::totally_singular;
  if (s == "nd" || s == "nondegenerate") return SubspaceTag::nondegenerate;
  if (s == "nsp" || s == "nonsingular_point") return SubspaceTag::nonsingular_point;
  if (s == "degenerate" || s == "degenerate_other") return SubspaceTag::degenerate_other;
  throw std::invalid_argument("unknown subspace class: " + s);
}

SubType parse_subtype(const std::string& s) {
  if (s == "na" || s.empty()) return SubType::na;
  if (s == "+" || s == "plus") return SubType::plus;
  if (s == "-" || s == "minus") return SubType::minus;
  if (s == "odd") return SubType::odd;
  throw std::invalid_argument("unknown subtype: " + s);
}

std::string SubspaceClass::str() const {
  std::string s = to_string(tag);
  if (subtype != SubType::na) s += "(" + to_string(subtype) + ")";
  if (disc >= 0) s += disc ? "[nonsquare]" : "[square]";
  return s;
}

Matrix restricted_gram(const ClassicalSpace& S, const Matrix& basis) {
  int k = basis.rows();
  Matrix g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g.at(i, j) = eval_form(S, basis.row_vec(i), basis.row_vec(j));
  return g;
}

SubspaceClass classify_subspace(const ClassicalSpace& S, const Subspace& A) {
  SubspaceClass c;
  if (S.kind == FormKind::linear) return c;
  const Field& F = S.field();
  int k = A.dim();
  Matrix g = restricted_gram(S, A.basis());
  bool f_zero = std::all_of(g.data().begin(), g.data().end(), [](Elem x) { return x.value == 0; });
  bool q_zero = true;
  if (S.kind == FormKind::quadratic)
    for (int i = 0; i < k && q_zero; ++i) q_zero = eval_q(S, A.basis().row_vec(i)).value == 0;
  if (f_zero && q_zero) {
    c.tag = SubspaceTag::totally_singular;
    return c;
  }
  if (rank(F, g) == k) {
    c.tag = SubspaceTag::nondegenerate;
    if (S.kind == FormKind::quadratic) {
      if (k % 2)
        c.subtype = SubType::odd;
      else
        c.subtype = witt_index(S, A) * 2 == k ? SubType::plus : SubType::minus;
      if (F.characteristic() != 2) c.disc = F.is_square(determinant(F, g)) ? 0 : 1;
    }
    return c;
  }
  if (S.kind == FormKind::quadratic && F.characteristic() == 2 && k == 1) {
    c.tag = SubspaceTag::nonsingular_point;
    return c;
  }
  c.tag = SubspaceTag::degenerate_other;
  return c;
}

bool class_matches(const SubspaceClass& wanted, const SubspaceClass& actual) {
  if (wanted.tag == SubspaceTag::any) return true;
  if (wanted.tag != actual.tag) return false;
  if (wanted.subtype != SubType::na && wanted.subtype != actual.subtype) return false;
  if (wanted.disc >= 0 && wanted.disc != actual.disc) return false;
  return true;
}

int witt_index(const ClassicalSpace& S, const std::optional<Subspace>& A, bool exhaustive) {
  if (S.kind == FormKind::linear) throw std::invalid_argument("witt_index: linear space has no form");
  const Field& F = S.field();
  Subspace sub = A ? *A : Subspace::whole(S.V);
  int k = sub.dim();
  if (k == 0) return 0;
  std::vector<Vec> pts = sub.points();
  std::vector<Vec> singular;
  for (auto& v : pts) {
    bool sing = S.kind == FormKind::quadratic ? eval_q(S, v).value == 0 : eval_form(S, v, v).value == 0;
    if (sing) singular.push_back(v);
  }
  std::size_t ns = singular.size();
  // perpendicularity among singular points
  std::vector<std::vector<char>> perp(ns, std::vector<char>(ns, 0));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = i; j < ns; ++j) perp[i][j] = perp[j][i] = eval_form(S, singular[i], singular[j]).value == 0;

  bool nondeg = rank(F, restricted_gram(S, sub.basis())) == k;
  if (nondeg && !exhaustive) {
    std::vector<std::size_t> chosen;
    std::vector<Vec> rows;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < ns; ++i) {
        bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return perp[i][c]; });
        if (!ok) continue;
        auto trial = rows;
        trial.push_back(singular[i]);
        if (rank(F, Matrix::from_rows(trial, S.n())) == static_cast<int>(trial.size())) {
          rows = std::move(trial);
          chosen.push_back(i);
          grew = true;
          break;
        }
      }
    }
    return static_cast<int>(rows.size());
  }

  int radical = k - rank(F, restricted_gram(S, sub.basis()));
  int bound = (k + radical) / 2;
  int best = 0;
  std::vector<Vec> rows;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    best = std::max(best, static_cast<int>(rows.size()));
    if (best >= bound) return;
    for (std::size_t i = start; i < ns; ++i) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return perp[i][c]; });
      if (!ok || !perp[i][i]) continue;
      rows.push_back(singular[i]);
      if (rank(F, Matrix::from_rows(rows, S.n())) == static_cast<int>(rows.size())) {
        chosen.push_back(i);
        dfs(i + 1);
        chosen.pop_back();
      }
      rows.pop_back();
      if (best >= bound) return;
    }
  };
  dfs(0);
  return best;
}

std::vector<std::uint64_t> count_vectors_by_q(const ClassicalSpace& S) {
  if (S.kind != FormKind::quadratic) throw std::invalid_argument("count_vectors_by_q: not a quadratic space");
  const Field& F = S.field();
  std::uint64_t q = F.order();
  int m = S.pairs;
  // Standard layout: hyperbolic pairs plus an orthogonal tail on the last n - 2m coordinates.
  bool standard = true;
  for (int i = 0; i < S.n() && standard; ++i)
    for (int j = i; j < S.n() && standard; ++j) {
      bool in_pair_block = i < 2 * m || j < 2 * m;
      if (!in_pair_block) continue;
      Elem want = (i < m && j == m + i) ? F.one() : F.zero();
      standard = S.qmat.at(i, j) == want;
    }
  std::vector<std::uint64_t> out(q, 0);
  if (!standard) {
    if (S.n() > 24 || static_cast<double>(S.n()) * std::log2(static_cast<double>(q)) > 24)
      throw std::invalid_argument("count_vectors_by_q: non-standard form too large to enumerate");
    for (auto& v : Subspace::whole(S.V).vectors()) ++out[eval_q(S, v).value];
    return out;
  }
  std::vector<std::uint64_t> hyp(q, 0);
  if (m == 0) {
    hyp[0] = 1;
  } else {
    u128 a = upow(q, 2 * m - 1), b = upow(q, m), c = upow(q, m - 1);
    hyp[0] = to_u64(a + b - c);
    for (std::uint64_t v = 1; v < q; ++v) hyp[v] = to_u64(a - c);
  }
  int tail = S.n() - 2 * m;
  std::vector<std::uint64_t> tcount(q, 0);
  std::vector<std::uint32_t> coef(tail, 0);
  while (true) {
    Vec v(S.n());
    for (int i = 0; i < tail; ++i) v[2 * m + i] = Elem{coef[i]};
    ++tcount[eval_q(S, v).value];
    int i = 0;
    while (i < tail && ++coef[i] == q) coef[i++] = 0;
    if (i == tail) break;
  }
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      out[F.add(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).value] +=
          hyp[a] * tcount[b];
  return out;
}

u128 order_gl(int n, std::uint64_t q) {
  u128 r = upow(q, n * (n - 1) / 2);
  for (int i = 1; i <= n; ++i) r = checked_mul(r, upow(q, i) - 1);
  return r;
}

u128 order_sp(int n, std::uint64_t q) {
  if (n % 2) throw std::invalid_argument("order_sp: odd n");
  int m = n / 2;
  u128 r = upow(q, m * m);
  for (int i = 1; i <= m; ++i) r = checked_mul(r, upow(q, 2 * i) - 1);
  return r;
}

u128 order_gu(int n, std::uint64_t q0) {
  u128 r = upow(q0, n * (n - 1) / 2);
  for (int i = 1; i <= n; ++i) r = checked_mul(r, i % 2 ? upow(q0, i) + 1 : upow(q0, i) - 1);
  return r;
}

u128 order_go(int n, std::uint64_t q, Sign sign) {
  if (n == 0) {
    if (sign == Sign::minus) throw std::invalid_argument("order_go: no minus-type zero space");
    return 1;
  }
  if (n % 2) {
    if (q % 2 == 0) throw std::invalid_argument("order_go: odd dimension needs odd q");
    int m = n / 2;
    u128 r = checked_mul(2, upow(q, m * m));
    for (int i = 1; i <= m; ++i) r = checked_mul(r, upow(q, 2 * i) - 1);
    return r;
  }
  if (sign != Sign::plus && sign != Sign::minus) throw std::invalid_argument("order_go: even dimension needs a sign");
  int m = n / 2;
  u128 r = checked_mul(2, upow(q, m * (m - 1)));
  r = checked_mul(r, sign == Sign::plus ? upow(q, m) - 1 : upow(q, m) + 1);
  for (int i = 1; i < m; ++i) r = checked_mul(r, upow(q, 2 * i) - 1);
  return r;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::SL: return "sl";
    case Family::Sp: return "sp";
    case Family::SU: return "su";
    case Family::GU: return "gu";
    case Family::GO: return "go";
    case Family::Omega: return "omega";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "sl") return Family::SL;
  if (l == "sp") return Family::Sp;
  if (l == "su") return Family::SU;
  if (l == "gu") return Family::GU;
  if (l == "go" || l == "o") return Family::GO;
  if (l == "omega") return Family::Omega;
  throw std::invalid_argument("unknown family: " + s);
}

u128 expected_order(Family family, int n, std::uint64_t q, Sign sign) {
  switch (family) {
    case Family::SL: return order_gl(n, q) / (q - 1);
    case Family::Sp: return order_sp(n, q);
    case Family::GU: return order_gu(n, q);
    case Family::SU: return order_gu(n, q) / (q + 1);
    case Family::GO: return order_go(n, q, sign);
    case Family::Omega: {
      if (n < 2) throw std::invalid_argument("expected_order: Omega needs n >= 2");
      return order_go(n, q, sign) / (q % 2 ? 4 : 2);
    }
  }
  throw std::invalid_argument("expected_order: unsupported family");
}

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

// Number of totally singular k-spaces in a polar space of rank r whose point
// count is (b^{2r} - 1)/(b^2 - 1) * (b^{2(r-1)+s} + 1), with b^2 the field order
// for unitary spaces and s = 2e in the classical parametrization.
std::uint64_t ts_count(std::uint64_t base, bool squared, int r, int s, int k) {
  if (k > r) return 0;
  std::uint64_t qq = squared ? base * base : base;
  u128 n = gaussian_binomial(r, k, qq);
  for (int i = 0; i < k; ++i) {
    int exp2 = 2 * (r - 1 - i) + s;  // exponent of sqrt-free base when squared
    u128 term = squared ? upow(base, exp2) + 1 : upow(base, exp2 / 2) + 1;
    n = checked_mul(n, term);
  }
  return to_u64(n);
}

std::uint64_t exact_ratio(u128 num, u128 den) {
  if (den == 0 || num % den) throw std::logic_error("predict_counts: non-integral orbit ratio");
  return to_u64(num / den);
}

int square_class(const Field& F, Elem a) { return F.is_square(a) ? 0 : 1; }

}  // namespace

std::uint64_t predict_counts(const ClassicalSpace& S, const SubspaceClass& cls, int k) {
  const Field& F = S.field();
  std::uint64_t q = F.order();
  int n = S.n();
  if (k < 0 || k > n) return 0;
  const std::string unsupported = "predict_counts: unsupported combination, enumerate instead";
  if (cls.tag == SubspaceTag::any) return gaussian_binomial(n, k, q);
  if (S.kind == FormKind::linear) throw std::invalid_argument(unsupported);

  if (cls.tag == SubspaceTag::totally_singular) {
    switch (S.kind) {
      case FormKind::symplectic: return ts_count(q, false, n / 2, 2, k);
      case FormKind::unitary: {
        std::uint64_t q0 = S.sub->order();
        return ts_count(q0, true, n / 2, n % 2 ? 3 : 1, k);
      }
      case FormKind::quadratic:
        if (S.sign == Sign::plus) return ts_count(q, false, n / 2, 0, k);
        if (S.sign == Sign::minus) return ts_count(q, false, n / 2 - 1, 4, k);
        return ts_count(q, false, n / 2, 2, k);
      default: break;
    }
    throw std::invalid_argument(unsupported);
  }

  if (cls.tag == SubspaceTag::nonsingular_point) {
    if (S.kind != FormKind::quadratic || q % 2 || k != 1) return 0;
    auto counts = count_vectors_by_q(S);
    std::uint64_t tot = 0;
    for (std::uint64_t c = 1; c < q; ++c) tot += counts[c];
    return tot / (q - 1);
  }

  if (cls.tag != SubspaceTag::nondegenerate) throw std::invalid_argument(unsupported);
  if (k == 0) return 1;

  if (S.kind == FormKind::symplectic) {
    if (k % 2) return 0;
    return exact_ratio(order_sp(n, q), checked_mul(order_sp(k, q), order_sp(n - k, q)));
  }
  if (S.kind == FormKind::unitary) {
    std::uint64_t q0 = S.sub->order();
    return exact_ratio(order_gu(n, q0), checked_mul(order_gu(k, q0), order_gu(n - k, q0)));
  }

  // quadratic
  auto flip = [](Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; };
  if (q % 2 == 0) {
    if (k % 2) return 0;
    std::uint64_t tot = 0;
    for (Sign su : {Sign::plus, Sign::minus}) {
      if (cls.subtype == SubType::plus && su != Sign::plus) continue;
      if (cls.subtype == SubType::minus && su != Sign::minus) continue;
      if (cls.subtype == SubType::odd) return 0;
      Sign sc = S.sign == Sign::plus ? su : flip(su);
      if (n == k) {
        tot += su == S.sign ? 1 : 0;
        continue;
      }
      tot += exact_ratio(order_go(n, q, S.sign), checked_mul(order_go(k, q, su), order_go(n - k, q, sc)));
    }
    return tot;
  }

  const int dv = square_class(F, determinant(F, S.gram));
  const Elem minus_one = F.neg(F.one());
  // Square class of det of an even-dimensional (2j) space of the given type.
  auto even_disc = [&](int dim, Sign s) {
    int d = (dim / 2) % 2 ? square_class(F, minus_one) : 0;
    return s == Sign::minus ? d ^ 1 : d;
  };
  auto type_from_disc = [&](int dim, int disc) { return even_disc(dim, Sign::plus) == disc ? Sign::plus : Sign::minus; };

  std::uint64_t tot = 0;
  if (k % 2 == 0) {
    if (cls.subtype == SubType::odd) return 0;
    for (Sign su : {Sign::plus, Sign::minus}) {
      if (cls.subtype == SubType::plus && su != Sign::plus) continue;
      if (cls.subtype == SubType::minus && su != Sign::minus) continue;
      if (cls.disc >= 0 && cls.disc != even_disc(k, su)) continue;
      if (n == k) {
        tot += su == S.sign ? 1 : 0;
        continue;
      }
      Sign sc = n % 2 ? Sign::odd : (S.sign == Sign::plus ? su : flip(su));
      tot += exact_ratio(order_go(n, q, S.sign), checked_mul(order_go(k, q, su), order_go(n - k, q, sc)));
    }
    return tot;
  }
  if (cls.subtype == SubType::plus || cls.subtype == SubType::minus) return 0;
  for (int d : {0, 1}) {
    if (cls.disc >= 0 && cls.disc != d) continue;
    if (n == k) {
      tot += d == dv ? 1 : 0;
      continue;
    }
    Sign sc = n % 2 ? type_from_disc(n - k, dv ^ d) : Sign::odd;
    tot += exact_ratio(order_go(n, q, S.sign), checked_mul(order_go(k, q, Sign::odd), order_go(n - k, q, sc)));
  }
  return tot;
}

bool polarizes(const ClassicalSpace& S) {
  if (S.kind != FormKind::quadratic) return false;
  const Field& F = S.field();
  for (int i = 0; i < S.n(); ++i) {
    Vec bi(S.n());
    bi[i] = F.one();
    if (eval_form(S, bi, bi) != F.add(eval_q(S, bi), eval_q(S, bi))) return false;
    for (int j = i + 1; j < S.n(); ++j) {
      Vec bj(S.n());
      bj[j] = F.one();
      Vec s = vec_add(F, bi, bj);
      if (eval_q(S, s) != F.add(F.add(eval_q(S, bi), eval_q(S, bj)), eval_form(S, bi, bj))) return false;
    }
  }
  return true;
}

Sign arf_invariant(const ClassicalSpace& symplectic, const Vec& diag) {
  ClassicalSpace S = with_quadratic_diag(symplectic, diag);
  if (!polarizes(S)) throw std::invalid_argument("arf_invariant: form does not polarize to the symplectic gram");
  return S.sign;
}

}  // namespace orbdiam
