#include "orbdiam/group.hpp"

#include <stdexcept>

namespace orbdiam {

GroupElement GroupElement::identity(int n) { return {Matrix::identity(n), 0, false}; }

namespace {

Matrix inverse_transpose(const Field& F, const Matrix& m) {
  auto inv = inverse(F, m);
  if (!inv) throw std::invalid_argument("group element with singular matrix");
  return transpose(*inv);
}

}  // namespace

GroupElement compose(const Field& F, const GroupElement& a, const GroupElement& b) {
  GroupElement r;
  Matrix left = b.flip ? inverse_transpose(F, a.mat) : a.mat;
  r.mat = mat_mul(F, frobenius(F, left, b.frob), b.mat);
  r.frob = (a.frob + b.frob) % F.degree();
  r.flip = a.flip != b.flip;
  return r;
}

GroupElement inverse(const Field& F, const GroupElement& g) {
  GroupElement r;
  r.frob = (F.degree() - g.frob % F.degree()) % F.degree();
  r.flip = g.flip;
  Matrix base = g.flip ? inverse_transpose(F, g.mat) : g.mat;
  auto inv = inverse(F, frobenius(F, base, r.frob));
  if (!inv) throw std::invalid_argument("group element with singular matrix");
  r.mat = std::move(*inv);
  return r;
}

Vec apply_vector(const Field& F, const Vec& v, const GroupElement& g) {
  if (g.flip) throw std::invalid_argument("apply_vector: graph flip does not act on vectors");
  Vec w = v;
  if (g.frob)
    for (auto& x : w) x = F.frobenius(x, g.frob);
  return vec_mul(F, w, g.mat);
}

Subspace apply_element(const Subspace& A, const GroupElement& g) {
  const Field& F = A.field();
  if (g.mat.rows() != A.n()) throw std::invalid_argument("apply_element: dimension mismatch");
  Subspace src = g.flip ? annihilator(A) : A;
  if (src.dim() == 0) return src;
  Matrix b = frobenius(F, src.basis(), g.frob);
  return Subspace::from_rref(A.ambient(), rref(F, mat_mul(F, b, g.mat)));
}

std::vector<std::uint32_t> projective_key(const Field& F, const GroupElement& g) {
  std::vector<std::uint32_t> key;
  key.reserve(g.mat.data().size() + 2);
  Elem scale = F.one();
  for (Elem x : g.mat.data())
    if (x.value) {
      scale = F.inv(x);
      break;
    }
  for (Elem x : g.mat.data()) key.push_back(F.mul(x, scale).value);
  key.push_back(g.frob);
  key.push_back(g.flip ? 1 : 0);
  return key;
}

std::vector<Elem> prime_field_basis(const Field& F) {
  std::vector<Elem> b;
  Elem w = F.primitive();
  Elem cur = F.one();
  for (std::uint32_t i = 0; i < F.degree(); ++i) {
    b.push_back(cur);
    cur = F.mul(cur, w);
  }
  return b;
}

ClassicalSpace natural_space(Family family, int n, const Field& F, Sign sign) {
  switch (family) {
    case Family::SL: return make_space(FormKind::linear, n, F);
    case Family::Sp: return make_space(FormKind::symplectic, n, F);
    case Family::SU:
    case Family::GU: return make_space(FormKind::unitary, n, F);
    case Family::GO:
    case Family::Omega: {
      if (sign == Sign::none) sign = n % 2 ? Sign::odd : Sign::plus;
      return make_space(FormKind::quadratic, n, F, sign);
    }
  }
  throw std::invalid_argument("natural_space: unknown family");
}

bool preserves_form(const ClassicalSpace& S, Family family, const GroupElement& g) {
  const Field& F = S.field();
  int n = S.n();
  if (g.flip) return S.kind == FormKind::linear;
  if (S.kind == FormKind::linear) {
    if (family == Family::SL && g.frob == 0) return determinant(F, g.mat) == F.one();
    return inverse(F, g.mat).has_value();
  }
  std::vector<Vec> img;
  for (int i = 0; i < n; ++i) {
    Vec b(n);
    b[i] = F.one();
    img.push_back(apply_vector(F, b, g));
  }
  for (int i = 0; i < n; ++i) {
    Vec bi(n);
    bi[i] = F.one();
    for (int j = 0; j < n; ++j) {
      Vec bj(n);
      bj[j] = F.one();
      if (eval_form(S, img[i], img[j]) != F.frobenius(eval_form(S, bi, bj), g.frob)) return false;
    }
    if (S.kind == FormKind::quadratic && eval_q(S, img[i]) != F.frobenius(eval_q(S, bi), g.frob)) return false;
  }
  if (family == Family::SU && g.frob == 0 && determinant(F, g.mat) != F.one()) return false;
  return true;
}

GroupElement eichler_siegel(const ClassicalSpace& S, const Vec& u, const Vec& v) {
  const Field& F = S.field();
  int n = S.n();
  if (eval_q(S, u).value != 0 || eval_form(S, u, v).value != 0)
    throw std::invalid_argument("eichler_siegel: need u singular and v perpendicular to u");
  Elem qv = eval_q(S, v);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    Vec x(n);
    x[i] = F.one();
    Elem fxv = eval_form(S, x, v), fxu = eval_form(S, x, u);
    Vec r = x;
    r = vec_add(F, r, vec_scale(F, fxv, u));
    r = vec_add(F, r, vec_scale(F, F.neg(fxu), v));
    r = vec_add(F, r, vec_scale(F, F.neg(F.mul(qv, fxu)), u));
    std::copy(r.begin(), r.end(), m.row(i).begin());
  }
  return {m, 0, false};
}

namespace {

struct Builder {
  const ClassicalSpace& S;
  const Field& F;
  GeneratorSet& out;

  // Matrix with the given rows replaced: rows[i] = image of basis vector i.
  void add(const std::string& name, const std::vector<std::pair<int, Vec>>& rows) {
    Matrix m = Matrix::identity(S.n());
    for (auto& [i, r] : rows) std::copy(r.begin(), r.end(), m.row(i).begin());
    out.gens.push_back({m, 0, false});
    out.names.push_back(name);
  }
  void add(const std::string& name, GroupElement g) {
    out.gens.push_back(std::move(g));
    out.names.push_back(name);
  }
  Vec unit(int i) const {
    Vec v(S.n());
    v[i] = F.one();
    return v;
  }
  Vec comb(std::initializer_list<std::pair<int, Elem>> terms) const {
    Vec v(S.n());
    for (auto& [i, c] : terms) v[i] = F.add(v[i], c);
    return v;
  }
};

std::string lam(Elem l) { return "(" + std::to_string(l.value) + ")"; }

// F_p-basis of {a : a + conj(a) = 0}.
std::vector<Elem> trace_zero_basis(const Field& F) {
  std::uint32_t p = F.characteristic();
  std::vector<Elem> basis;
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::uint32_t a = 1; a < F.order(); ++a) {
    Elem e{a};
    if (F.add(e, conjugate(F, e)).value != 0) continue;
    auto c = F.coeffs(e);
    // independence over F_p by elimination on coefficient vectors
    auto trial = rows;
    trial.push_back(c);
    Field Fp = Field::make(p, 1);
    Matrix m(static_cast<int>(trial.size()), static_cast<int>(F.degree()));
    for (std::size_t i = 0; i < trial.size(); ++i)
      for (std::size_t j = 0; j < F.degree(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = Elem{trial[i][j]};
    if (rank(Fp, m) == static_cast<int>(trial.size())) {
      rows = std::move(trial);
      basis.push_back(e);
    }
    if (basis.size() * 2 == F.degree()) break;
  }
  return basis;
}

void sl_gens(Builder& b) {
  int n = b.S.n();
  for (int i = 0; i + 1 < n; ++i)
    for (Elem l : prime_field_basis(b.F)) {
      b.add("x" + std::to_string(i + 1) + "," + std::to_string(i + 2) + lam(l),
            {{i, b.comb({{i, b.F.one()}, {i + 1, l}})}});
      b.add("x" + std::to_string(i + 2) + "," + std::to_string(i + 1) + lam(l),
            {{i + 1, b.comb({{i + 1, b.F.one()}, {i, l}})}});
    }
}

void sp_gens(Builder& b) {
  const ClassicalSpace& S = b.S;
  const Field& F = b.F;
  int m = S.pairs;
  Elem one = F.one();
  for (Elem l : prime_field_basis(F)) {
    Elem nl = F.neg(l);
    for (int i = 1; i < m; ++i) {
      int ei = S.e_index(i), ej = S.e_index(i + 1), fi = S.f_index(i), fj = S.f_index(i + 1);
      b.add("s" + std::to_string(i) + "+" + lam(l), {{ei, b.comb({{ei, one}, {ej, l}})}, {fj, b.comb({{fj, one}, {fi, nl}})}});
      b.add("s" + std::to_string(i) + "-" + lam(l), {{ej, b.comb({{ej, one}, {ei, l}})}, {fi, b.comb({{fi, one}, {fj, nl}})}});
    }
    int em = S.e_index(m), fm = S.f_index(m);
    b.add("l+" + lam(l), {{em, b.comb({{em, one}, {fm, l}})}});
    b.add("l-" + lam(l), {{fm, b.comb({{fm, one}, {em, l}})}});
  }
}

void su_gens(Builder& b, bool general) {
  const ClassicalSpace& S = b.S;
  const Field& F = b.F;
  int m = S.pairs;
  Elem one = F.one();
  auto cj = [&](Elem a) { return conjugate(F, a); };
  for (Elem l : prime_field_basis(F)) {
    Elem nlb = F.neg(cj(l));
    for (int i = 1; i < m; ++i) {
      int ei = S.e_index(i), ej = S.e_index(i + 1), fi = S.f_index(i), fj = S.f_index(i + 1);
      b.add("u" + std::to_string(i) + "+" + lam(l), {{ei, b.comb({{ei, one}, {ej, l}})}, {fj, b.comb({{fj, one}, {fi, nlb}})}});
      b.add("u" + std::to_string(i) + "-" + lam(l), {{ej, b.comb({{ej, one}, {ei, l}})}, {fi, b.comb({{fi, one}, {fj, nlb}})}});
    }
  }
  if (m >= 1) {
    int em = S.e_index(m), fm = S.f_index(m);
    for (Elem a : trace_zero_basis(F)) {
      b.add("c+" + lam(a), {{em, b.comb({{em, one}, {fm, a}})}});
      b.add("c-" + lam(a), {{fm, b.comb({{fm, one}, {em, a}})}});
    }
    if (S.has_x()) {
      int xi = S.x_index();
      Elem chi = special_param(F, SpecialParam::chi);
      for (Elem bb : prime_field_basis(F)) {
        Elem c = F.neg(F.mul(chi, F.mul(bb, cj(bb))));
        Elem nbb = F.neg(cj(bb));
        b.add("h+" + lam(bb), {{em, b.comb({{em, one}, {xi, bb}, {fm, c}})}, {xi, b.comb({{xi, one}, {fm, nbb}})}});
        b.add("h-" + lam(bb), {{fm, b.comb({{fm, one}, {xi, bb}, {em, c}})}, {xi, b.comb({{xi, one}, {em, nbb}})}});
      }
    }
    // det-1 torus element
    Elem w = F.primitive();
    Elem wb_inv = F.inv(cj(w));
    if (S.has_x()) {
      int xi = S.x_index();
      b.add("t", {{em, b.comb({{em, w}})}, {fm, b.comb({{fm, wb_inv}})}, {xi, b.comb({{xi, F.mul(cj(w), F.inv(w))}})}});
    } else if (m >= 2) {
      int e1 = S.e_index(1), f1 = S.f_index(1);
      Elem v = cj(w);
      b.add("t", {{em, b.comb({{em, w}})}, {fm, b.comb({{fm, wb_inv}})}, {e1, b.comb({{e1, v}})}, {f1, b.comb({{f1, F.inv(cj(v))}})}});
    }
  }
  if (general) {
    Elem w = F.primitive();
    if (S.has_x()) {
      int xi = S.x_index();
      b.add("d", {{xi, b.comb({{xi, F.mul(w, F.inv(cj(w)))}})}});
    } else {
      int e1 = S.e_index(1), f1 = S.f_index(1);
      b.add("d", {{e1, b.comb({{e1, w}})}, {f1, b.comb({{f1, F.inv(cj(w))}})}});
    }
  }
}

void omega_gens(Builder& b) {
  const ClassicalSpace& S = b.S;
  const Field& F = b.F;
  int m = S.pairs;
  auto es = [&](const std::string& name, const Vec& u, const Vec& v) { b.add(name, eichler_siegel(S, u, v)); };
  for (Elem l : prime_field_basis(F)) {
    for (int i = 1; i < m; ++i) {
      es("r" + std::to_string(i) + "+" + lam(l), S.e(i), vec_scale(F, l, S.f(i + 1)));
      es("r" + std::to_string(i) + "-" + lam(l), S.f(i), vec_scale(F, l, S.e(i + 1)));
    }
    if (S.sign == Sign::plus && m >= 2) {
      es("d+" + lam(l), S.e(m - 1), vec_scale(F, l, S.e(m)));
      es("d-" + lam(l), S.f(m - 1), vec_scale(F, l, S.f(m)));
    }
    if (S.sign == Sign::odd && m >= 1) {
      es("b+" + lam(l), S.e(m), vec_scale(F, l, S.x()));
      es("b-" + lam(l), S.f(m), vec_scale(F, l, S.x()));
    }
    if (S.sign == Sign::minus && m >= 1) {
      es("a+x" + lam(l), S.e(m), vec_scale(F, l, S.x()));
      es("a+y" + lam(l), S.e(m), vec_scale(F, l, S.y()));
      es("a-x" + lam(l), S.f(m), vec_scale(F, l, S.x()));
      es("a-y" + lam(l), S.f(m), vec_scale(F, l, S.y()));
    }
  }
}

GroupElement reflection(const ClassicalSpace& S, const Vec& v) {
  // x ↦ x − f(x,v)/Q(v)·v (an orthogonal transvection in characteristic 2)
  const Field& F = S.field();
  int n = S.n();
  Elem qv = eval_q(S, v);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    Vec x(n);
    x[i] = F.one();
    Vec r = vec_add(F, x, vec_scale(F, F.neg(F.div(eval_form(S, x, v), qv)), v));
    std::copy(r.begin(), r.end(), m.row(i).begin());
  }
  return {m, 0, false};
}

bool frobenius_invariant(const ClassicalSpace& S) {
  const Field& F = S.field();
  for (Elem x : S.gram.data())
    if (F.frobenius(x, 1) != x) return false;
  for (Elem x : S.qmat.data())
    if (F.frobenius(x, 1) != x) return false;
  return true;
}

}  // namespace

GeneratorSet generator_catalog(Family family, const ClassicalSpace& S, Extensions ext) {
  GeneratorSet out;
  out.family = family;
  out.space = S;
  out.ext = ext;
  Builder b{S, S.field(), out};
  const Field& F = S.field();
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument("generator_catalog: " + msg);
  };
  switch (family) {
    case Family::SL:
      require(S.kind == FormKind::linear, "SL needs a linear space");
      sl_gens(b);
      break;
    case Family::Sp:
      require(S.kind == FormKind::symplectic, "Sp needs a symplectic space");
      sp_gens(b);
      break;
    case Family::SU:
    case Family::GU:
      require(S.kind == FormKind::unitary, "SU/GU need a unitary space");
      require(S.n() >= 2, "unitary dimension must be at least 2");
      su_gens(b, family == Family::GU);
      break;
    case Family::GO:
    case Family::Omega: {
      require(S.kind == FormKind::quadratic, "orthogonal families need a quadratic space");
      require(S.pairs >= 1, "Omega needs Witt index at least 1");
      require(S.n() >= 3, "orthogonal dimension must be at least 3");
      omega_gens(b);
      if (family == Family::GO) {
        if (F.characteristic() == 2) {
          Vec v = vec_add(F, S.e(1), S.f(1));
          b.add("refl", reflection(S, v));
        } else {
          Vec a = vec_add(F, S.e(1), S.f(1));  // Q = 1
          Vec c = vec_add(F, S.e(1), vec_scale(F, *F.nonsquare(), S.f(1)));
          b.add("refl(sq)", reflection(S, a));
          b.add("refl(nsq)", reflection(S, c));
        }
      }
      break;
    }
  }
  if (ext.field_auto && F.degree() > 1) {
    require(frobenius_invariant(S), "field automorphism does not preserve the standard form");
    b.add("frob", GroupElement{Matrix::identity(S.n()), 1, false});
  }
  if (ext.graph_auto) {
    require(family == Family::SL, "graph automorphism is only catalogued for SL");
    b.add("flip", GroupElement{Matrix::identity(S.n()), 0, true});
  }
  for (std::size_t i = 0; i < out.gens.size(); ++i)
    if (!preserves_form(S, family, out.gens[i]))
      throw std::logic_error("generator " + out.names[i] + " does not preserve the form");
  return out;
}

}  // namespace orbdiam
