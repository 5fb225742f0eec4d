#include "orbdiam/orbital.hpp"
#include "orbdiam/cache.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace orbdiam {

std::string to_string(ActionCase c) {
  switch (c) {
    case ActionCase::b: return "b";
    case ActionCase::c: return "c";
    case ActionCase::d: return "d";
  }
  return "?";
}

std::string to_string(VertexKind v) {
  switch (v) {
    case VertexKind::subspace: return "subspace";
    case VertexKind::subspace_pair: return "subspace_pair";
    case VertexKind::quadratic_form: return "quadratic_form";
  }
  return "?";
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::invariant: return "invariant";
    case Strategy::stab_sample: return "stab_sample";
    case Strategy::pair_bfs: return "pair_bfs";
  }
  return "?";
}

ActionCase parse_case(const std::string& s) {
  if (s == "b") return ActionCase::b;
  if (s == "c") return ActionCase::c;
  if (s == "d") return ActionCase::d;
  throw std::invalid_argument("unknown action case '" + s + "'");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::automatic;
  if (s == "invariant") return Strategy::invariant;
  if (s == "stab_sample") return Strategy::stab_sample;
  if (s == "pair_bfs") return Strategy::pair_bfs;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

// ---------------------------------------------------------------- instance

Subspace ActionInstance::subspace(std::uint32_t v) const {
  auto m = std::dynamic_pointer_cast<const SubspaceModel>(model);
  if (!m) throw std::logic_error("vertices are not subspaces");
  return m->decode(orbit.code(v));
}

std::pair<Subspace, Subspace> ActionInstance::pair(std::uint32_t v) const {
  auto m = std::dynamic_pointer_cast<const PairModel>(model);
  if (!m) throw std::logic_error("vertices are not subspace pairs");
  return m->decode(orbit.code(v));
}

Vec ActionInstance::form(std::uint32_t v) const {
  auto m = std::dynamic_pointer_cast<const FormModel>(model);
  if (!m) throw std::logic_error("vertices are not quadratic forms");
  return m->decode(orbit.code(v));
}

std::optional<std::uint32_t> ActionInstance::index_of(const Subspace& A) const {
  auto m = std::dynamic_pointer_cast<const SubspaceModel>(model);
  if (!m) throw std::logic_error("vertices are not subspaces");
  if (A.dim() != spec.t && A.dim() != space.n() - spec.t) return std::nullopt;
  auto code = A.encode().words;
  if (code.size() > m->width()) return std::nullopt;
  code.resize(m->width(), 0);
  return orbit.find(code.data());
}

std::optional<std::uint32_t> ActionInstance::index_of(const Subspace& U, const Subspace& W) const {
  auto m = std::dynamic_pointer_cast<const PairModel>(model);
  if (!m) throw std::logic_error("vertices are not subspace pairs");
  auto code = m->encode(U, W);
  return orbit.find(code.data());
}

std::string ActionInstance::key() const {
  nlohmann::ordered_json j;
  j["case"] = to_string(spec.action);
  j["family"] = to_string(spec.family);
  j["n"] = spec.n;
  j["q"] = spec.q;
  j["epsilon"] = to_string(spec.sign);
  j["t"] = spec.t;
  j["class"] = spec.cls.str();
  j["field_auto"] = spec.ext.field_auto;
  j["graph_auto"] = spec.ext.graph_auto;
  return j.dump();
}

// ---------------------------------------------------------------- representatives

Subspace standard_representative(const ClassicalSpace& S, int k, const SubspaceClass& cls) {
  const Field& F = S.field();
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("no standard representative for " + cls.str() + " of dimension " +
                                 std::to_string(k) + ": " + why);
  };
  if (k < 1 || k >= S.n()) throw fail("dimension out of range");
  std::vector<Vec> rows;
  auto check = [&](const std::vector<Vec>& r) {
    Subspace A = Subspace::span(S.V, r);
    return A.dim() == k && class_matches(cls, classify_subspace(S, A)) ? std::optional<Subspace>(A) : std::nullopt;
  };
  if (S.kind == FormKind::linear || cls.tag == SubspaceTag::any) {
    for (int i = 0; i < k; ++i) rows.push_back(unit_vec(S.n(), i));
    if (auto A = check(rows)) return *A;
    throw fail("standard span does not match");
  }
  switch (cls.tag) {
    case SubspaceTag::totally_singular: {
      if (k > S.pairs) throw fail("exceeds the Witt index");
      for (int i = 1; i <= k; ++i) rows.push_back(S.e(i));
      if (auto A = check(rows)) return *A;
      break;
    }
    case SubspaceTag::nonsingular_point: {
      if (k != 1) throw fail("nonsingular points are 1-spaces");
      if (S.pairs < 1) throw fail("no hyperbolic pair");
      if (auto A = check({vec_add(F, S.e(1), S.f(1))})) return *A;
      break;
    }
    case SubspaceTag::nondegenerate: {
      int l = k / 2;
      bool odd = k % 2 == 1;
      std::vector<std::vector<Vec>> tails;
      if (!odd && (cls.subtype == SubType::plus || S.kind != FormKind::quadratic)) {
        if (l > S.pairs) throw fail("not enough hyperbolic pairs");
        for (int i = 1; i <= l; ++i) rows.push_back(S.e(i)), rows.push_back(S.f(i));
        if (auto A = check(rows)) return *A;
        break;
      }
      int used = odd ? l : l - 1;
      if (used > S.pairs) throw fail("not enough hyperbolic pairs");
      for (int i = 1; i <= used; ++i) rows.push_back(S.e(i)), rows.push_back(S.f(i));
      if (!odd) {
        if (S.has_y()) tails.push_back({S.x(), S.y()});
        if (used + 2 <= S.pairs) {
          Elem z = special_param(F, SpecialParam::zeta);
          int a = used + 1;
          tails.push_back({vec_add(F, S.e(a), S.f(a)),
                           vec_add(F, vec_add(F, S.e(a), vec_scale(F, z, S.e(a + 1))), S.f(a + 1))});
        }
      } else {
        if (S.has_x()) tails.push_back({S.x()});
        if (S.kind == FormKind::unitary && used + 1 <= S.pairs) {
          Elem chi = special_param(F, SpecialParam::chi);
          tails.push_back({vec_add(F, S.e(used + 1), vec_scale(F, chi, S.f(used + 1)))});
        }
        if (S.kind == FormKind::quadratic && used + 1 <= S.pairs)
          for (std::uint32_t c = 1; c < F.order(); ++c)
            tails.push_back({vec_add(F, S.e(used + 1), vec_scale(F, Elem{c}, S.f(used + 1)))});
        if (S.has_y()) tails.push_back({S.y()});
      }
      for (const auto& tail : tails) {
        auto r = rows;
        r.insert(r.end(), tail.begin(), tail.end());
        if (auto A = check(r)) return *A;
      }
      break;
    }
    default: break;
  }
  throw fail("no catalogued span has this class");
}

namespace {

Field field_for(const ActionSpec& s) {
  bool unitary = s.family == Family::SU || s.family == Family::GU;
  return Field::of_order(unitary ? std::uint64_t{s.q} * s.q : s.q);
}

ActionInstance finish(ActionInstance A, const std::vector<std::uint64_t>& base) {
  if (A.spec.cache_dir.empty()) {
    A.orbit = orbit_bfs(*A.model, base, A.spec.budget);
    return A;
  }
  OrbitCacheKey key{A.space.key(), A.key(), generators_hash(A.gens.gens), base};
  if (auto cached = load_orbit(A.spec.cache_dir, key)) {
    if (cached->size() > A.spec.budget) throw BudgetExceeded("cached orbit exceeds the point budget", cached->size());
    A.orbit = std::move(*cached);
    return A;
  }
  A.orbit = orbit_bfs(*A.model, base, A.spec.budget);
  save_orbit(A.spec.cache_dir, key, A.orbit);
  return A;
}

}  // namespace

ActionInstance make_action_from(const ActionSpec& spec, const Subspace& base) {
  if (spec.action != ActionCase::b) throw std::invalid_argument("explicit subspace bases are for case b");
  ActionInstance A;
  A.spec = spec;
  Field F = field_for(spec);
  A.space = natural_space(spec.family, spec.n, F, spec.sign);
  if (spec.t < 1 || spec.t >= spec.n) throw std::invalid_argument("t must satisfy 1 <= t < n");
  if (base.dim() != spec.t || base.n() != spec.n) throw std::invalid_argument("base does not have dimension t");
  A.k = std::min(spec.t, spec.n - spec.t);
  A.gens = generator_catalog(spec.family, A.space, spec.ext);
  A.kind = VertexKind::subspace;
  auto cls = classify_subspace(A.space, base);
  if (!class_matches(spec.cls, cls)) throw std::invalid_argument("base is of class " + cls.str() + ", not " + spec.cls.str());
  A.spec.cls = cls;
  try {
    SubspaceClass wanted = cls;
    A.class_total = predict_counts(A.space, wanted, spec.t);
  } catch (const std::exception&) {
  }
  auto m = std::make_shared<SubspaceModel>(A.space.V, spec.t, A.gens.gens);
  A.model = m;
  return finish(std::move(A), m->encode(base));
}

ActionInstance make_action(const ActionSpec& spec) {
  if (spec.n < 2 || spec.n > 16) throw std::invalid_argument("n must lie in [2, 16]");
  switch (spec.action) {
    case ActionCase::b: {
      ActionSpec s = spec;
      if (s.family == Family::SL) {
        if (s.cls.tag != SubspaceTag::any) throw std::invalid_argument("SL actions take the class 'any'");
      } else if (s.cls.tag == SubspaceTag::any || s.cls.tag == SubspaceTag::degenerate_other) {
        throw std::invalid_argument("classical actions need a class: ts, nd or nsp");
      }
      if (s.cls.tag == SubspaceTag::nonsingular_point && Field::of_order(s.q).characteristic() != 2)
        throw std::invalid_argument("nonsingular points are the q-even class");
      Field F = field_for(s);
      auto S = natural_space(s.family, s.n, F, s.sign);
      s.sign = S.sign;
      return make_action_from(s, standard_representative(S, s.t, s.cls));
    }
    case ActionCase::c: {
      if (spec.family != Family::SL) throw std::invalid_argument("case c is the SL action on subspace pairs");
      if (spec.t < 1 || 2 * spec.t > spec.n) throw std::invalid_argument("case c needs 1 <= t <= n/2");
      ActionInstance A;
      A.spec = spec;
      A.spec.ext.graph_auto = true;
      A.spec.cls = SubspaceClass{};
      A.space = natural_space(Family::SL, spec.n, field_for(spec), Sign::none);
      A.k = spec.t;
      A.gens = generator_catalog(Family::SL, A.space, A.spec.ext);
      A.kind = VertexKind::subspace_pair;
      std::vector<Vec> u, w;
      for (int i = 0; i < spec.n; ++i) (i < spec.t ? u : w).push_back(unit_vec(spec.n, i));
      auto m = std::make_shared<PairModel>(A.space.V, spec.t, A.gens.gens);
      A.model = m;
      return finish(std::move(A), m->encode(Subspace::span(A.space.V, u), Subspace::span(A.space.V, w)));
    }
    case ActionCase::d: {
      if (spec.family != Family::Sp) throw std::invalid_argument("case d is the symplectic action on quadratic forms");
      Field F = field_for(spec);
      if (F.characteristic() != 2) throw std::invalid_argument("case d needs q even");
      if (spec.n % 2) throw std::invalid_argument("case d needs n even");
      if (spec.sign != Sign::plus && spec.sign != Sign::minus) throw std::invalid_argument("case d needs epsilon + or -");
      if (spec.ext.graph_auto) throw std::invalid_argument("graph automorphism does not act on forms");
      ActionInstance A;
      A.spec = spec;
      A.spec.cls = SubspaceClass{};
      A.space = natural_space(Family::Sp, spec.n, F, Sign::none);
      A.k = 0;
      A.gens = generator_catalog(Family::Sp, A.space, spec.ext);
      A.kind = VertexKind::quadratic_form;
      Vec diag(spec.n);
      if (spec.sign == Sign::minus) {
        diag[A.space.e_index(1)] = F.one();
        diag[A.space.f_index(1)] = special_param(F, SpecialParam::zeta);
      }
      if (arf_invariant(A.space, diag) != spec.sign) throw std::logic_error("base form has the wrong type");
      auto m = std::make_shared<FormModel>(A.space, A.gens.gens);
      A.model = m;
      std::uint64_t half = 1;
      for (int i = 0; i < spec.n / 2 - 1; ++i) half *= F.order();
      // q^{m-1}(q^m + eps) forms of each type when q = 2; general q counts are left to the orbit.
      if (F.order() == 2) A.class_total = half * (2 * half + (spec.sign == Sign::plus ? 1 : -1));
      return finish(std::move(A), m->encode(diag));
    }
  }
  throw std::invalid_argument("unknown action case");
}

// ---------------------------------------------------------------- invariants

namespace {

enum class InvKind { none, sl_dim, halfspin_dim, ts_perp, unitary_nd, orth_pm, qeven_alpha };

InvKind invariant_kind(const ActionInstance& A) {
  const auto& s = A.spec;
  if (s.action != ActionCase::b) return InvKind::none;
  const auto& S = A.space;
  if (S.kind == FormKind::linear) return InvKind::sl_dim;
  if (s.t == 1) {
    if (s.cls.tag == SubspaceTag::totally_singular) return InvKind::ts_perp;
    // SU has the GU orbits on subspaces once the scalars reach every determinant: gcd(n, q0 + 1) = 1.
    if (S.kind == FormKind::unitary && s.cls.tag == SubspaceTag::nondegenerate &&
        (s.family == Family::GU || std::gcd(s.n, static_cast<int>(s.q) + 1) == 1))
      return InvKind::unitary_nd;
    if (S.kind == FormKind::quadratic && S.field().characteristic() != 2 && s.cls.tag == SubspaceTag::nondegenerate)
      return InvKind::orth_pm;
    if (S.kind == FormKind::quadratic && s.cls.tag == SubspaceTag::nonsingular_point) return InvKind::qeven_alpha;
  }
  if (S.kind == FormKind::quadratic && S.sign == Sign::plus && s.cls.tag == SubspaceTag::totally_singular &&
      2 * s.t == S.n() && (s.family == Family::Omega))
    return InvKind::halfspin_dim;
  return InvKind::none;
}

Vec point_vector(const Subspace& A) { return A.basis().row_vec(0); }

}  // namespace

bool invariant_supported(const ActionInstance& A) { return invariant_kind(A) != InvKind::none; }

std::optional<std::string> invariant_adjacency(const ActionInstance& A, std::uint32_t x, std::uint32_t y) {
  InvKind kind = invariant_kind(A);
  if (kind == InvKind::none) return std::nullopt;
  const auto& S = A.space;
  const Field& F = S.field();
  Subspace a = A.subspace(x), b = A.subspace(y);
  switch (kind) {
    case InvKind::sl_dim:
    case InvKind::halfspin_dim: return "dim=" + std::to_string(meet(a, b).dim());
    case InvKind::ts_perp: {
      Elem f = eval_form(S, point_vector(a), point_vector(b));
      return std::string(f.value ? "nonperp" : "perp");
    }
    case InvKind::unitary_nd: {
      auto normalize = [&](Vec v) {
        Elem c = eval_form(S, v, v);
        Elem target = F.inv(c);
        for (std::uint32_t al = 1; al < F.order(); ++al)
          if (F.mul(Elem{al}, conjugate(F, Elem{al})) == target) return vec_scale(F, Elem{al}, v);
        throw std::logic_error("norm map not surjective");
      };
      Elem lam = eval_form(S, normalize(point_vector(a)), normalize(point_vector(b)));
      if (!lam.value) return std::string("lambdaD=0");
      std::uint32_t best = F.order();
      for (std::uint32_t d = 1; d < F.order(); ++d)
        if (F.mul(Elem{d}, conjugate(F, Elem{d})) == F.one()) best = std::min(best, F.mul(lam, Elem{d}).value);
      return "lambdaD=" + std::to_string(best);
    }
    case InvKind::orth_pm: {
      Elem ns = *F.nonsquare();
      auto normalize = [&](Vec v) {
        Elem c = eval_q(S, v);
        Elem target = F.is_square(c) ? F.one() : ns;
        return vec_scale(F, *F.sqrt(F.div(target, c)), v);
      };
      Elem f = eval_form(S, normalize(point_vector(a)), normalize(point_vector(b)));
      return "pm=" + std::to_string(std::min(f.value, F.neg(f).value));
    }
    case InvKind::qeven_alpha: {
      auto normalize = [&](Vec v) { return vec_scale(F, F.inv(*F.sqrt(eval_q(S, v))), v); };
      return "alpha=" + std::to_string(eval_form(S, normalize(point_vector(a)), normalize(point_vector(b))).value);
    }
    case InvKind::none: break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- enumeration

int OrbitalResult::diameter() const {
  int d = 0;
  for (const auto& o : orbitals) {
    if (!o.connected) return -1;
    d = std::max(d, o.diameter);
  }
  return d;
}

namespace {

// Relabel so ids appear in order of their smallest vertex; the base keeps `none`.
std::vector<std::uint32_t> canonical_labels(const std::vector<std::uint32_t>& raw) {
  std::map<std::uint32_t, std::uint32_t> id;
  std::vector<std::uint32_t> out(raw.size(), Orbit::none);
  for (std::size_t y = 1; y < raw.size(); ++y) {
    auto [it, fresh] = id.emplace(raw[y], static_cast<std::uint32_t>(id.size()));
    out[y] = it->second;
  }
  return out;
}

bool same_partition(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  return canonical_labels(a) == canonical_labels(b);
}

}  // namespace

OrbitalResult orbitals_enumerate(const ActionInstance& A, const EnumerateOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  const Orbit& X = A.orbit;
  const std::size_t N = X.size();
  OrbitalResult R;
  Strategy st = opt.strategy;
  if (st == Strategy::automatic)
    st = invariant_supported(A) ? Strategy::invariant : (N <= opt.pair_cap ? Strategy::pair_bfs : Strategy::stab_sample);
  R.strategy = st;
  R.exact = st != Strategy::stab_sample;

  std::vector<std::string> sig_of_label;
  std::vector<std::uint32_t> raw(N, Orbit::none);
  std::optional<PairOrbitals> po;
  auto invariant_labels = [&](std::vector<std::string>* names) {
    std::map<std::string, std::uint32_t> id;
    std::vector<std::uint32_t> lab(N, Orbit::none);
    for (std::uint32_t y = 1; y < N; ++y) {
      auto s = *invariant_adjacency(A, 0, y);
      auto [it, fresh] = id.emplace(s, static_cast<std::uint32_t>(id.size()));
      if (fresh && names) names->push_back(s);
      lab[y] = it->second;
    }
    return lab;
  };

  switch (st) {
    case Strategy::invariant: {
      if (!invariant_supported(A)) throw std::invalid_argument("no proved invariant for this action; use pair_bfs or stab_sample");
      raw = invariant_labels(&sig_of_label);
      auto cl = raw;
      cl[0] = static_cast<std::uint32_t>(sig_of_label.size());
      R.cells = cells_from_labels(cl);
      break;
    }
    case Strategy::pair_bfs: {
      po = pair_orbitals(X, opt.pair_cap);
      raw = po->label;
      R.cells = stabilizer_cells(X, {opt.seed});
      break;
    }
    case Strategy::stab_sample: {
      R.cells = stabilizer_cells(X, {opt.seed});
      std::vector<std::uint32_t> group(R.cells.count());
      std::iota(group.begin(), group.end(), 0u);
      std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t c) {
        return group[c] == c ? c : group[c] = find(group[c]);
      };
      for (std::uint32_t K = 0; K < R.cells.count(); ++K) {
        std::uint32_t y = R.cells.rep[K];
        if (y == 0) continue;
        std::uint32_t z = X.apply_transversal_inverse(0, y);
        std::uint32_t a = find(K), b = find(R.cells.cell_of[z]);
        if (a != b) group[std::max(a, b)] = std::min(a, b);
      }
      for (std::uint32_t y = 1; y < N; ++y) raw[y] = find(R.cells.cell_of[y]);
      break;
    }
    case Strategy::automatic: break;
  }
  R.label = canonical_labels(raw);
  std::size_t count = 0;
  for (std::uint32_t y = 1; y < N; ++y) count = std::max<std::size_t>(count, R.label[y] + 1);
  R.orbitals.resize(count);
  for (std::uint32_t y = 1; y < N; ++y) {
    auto& o = R.orbitals[R.label[y]];
    if (o.nbrs.empty()) o.rep = y;
    o.nbrs.push_back(y);
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) {
    auto& o = R.orbitals[i];
    std::uint64_t twice = static_cast<std::uint64_t>(N) * o.nbrs.size();
    if (twice % 2) R.checks.partition = false;
    o.edges = twice / 2;
    if (po) {
      std::uint32_t pid = po->label[o.rep];
      if (po->edges[pid] != o.edges) R.checks.partition = false;
    }
    total += o.edges;
    if (st == Strategy::invariant) {
      o.signature = *invariant_adjacency(A, 0, o.rep);
    } else if (invariant_supported(A)) {
      o.signature = invariant_adjacency(A, 0, o.rep);
    }
    o.dist = base_distances(X, o.nbrs, R.cells);
    o.connected = std::find(o.dist.begin(), o.dist.end(), -1) == o.dist.end();
    o.diameter = o.connected ? *std::max_element(o.dist.begin(), o.dist.end()) : -1;
    if (!o.connected) R.checks.connectivity = false;
  }
  if (total != static_cast<std::uint64_t>(N) * (N - 1) / 2) R.checks.partition = false;

  if (opt.transitivity_sources > 0 && N > 1) {
    std::mt19937_64 rng(opt.seed ^ 0x5bd1e995ULL);
    bool all_done = true, ok = true;
    for (const auto& o : R.orbitals)
      for (int s = 0; s < opt.transitivity_sources; ++s) {
        auto v = static_cast<std::uint32_t>(rng() % N);
        auto e = eccentricity(X, o.nbrs, v, opt.transitivity_budget);
        if (!e) {
          all_done = false;
          continue;
        }
        if (*e != o.diameter) ok = false;
      }
    if (all_done || !ok) R.checks.vertex_transitivity = ok;
  }

  if (opt.check_invariant && invariant_supported(A)) {
    if (st == Strategy::invariant) {
      if (N <= opt.pair_cap) R.checks.invariant_matches = same_partition(raw, pair_orbitals(X, opt.pair_cap).label);
    } else if (R.exact) {
      R.checks.invariant_matches = same_partition(raw, invariant_labels(nullptr));
    }
  }
  R.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return R;
}

nlohmann::ordered_json result_json(const ActionInstance& A, const OrbitalResult& R) {
  auto hex = [&](std::uint32_t v) {
    std::string s;
    char buf[17];
    for (std::size_t i = 0; i < A.orbit.width(); ++i) {
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(A.orbit.code(v)[i]));
      s += (i ? ":" : "") + std::string(buf);
    }
    return s;
  };
  nlohmann::ordered_json j;
  j["action"] = nlohmann::ordered_json::parse(A.key());
  j["space"] = nlohmann::ordered_json::parse(A.space.key());
  j["vertex_kind"] = to_string(A.kind);
  j["X"] = A.size();
  if (A.class_total) j["class_total"] = *A.class_total;
  j["k"] = A.k;
  j["rank"] = R.rank();
  j["strategy"] = to_string(R.strategy);
  j["exact"] = R.exact;
  nlohmann::ordered_json orbs = nlohmann::ordered_json::array();
  for (const auto& o : R.orbitals) {
    nlohmann::ordered_json e;
    e["rep_edge"] = {hex(0), hex(o.rep)};
    e["rep_edge_text"] = {A.describe(0), A.describe(o.rep)};
    if (o.signature) e["signature"] = *o.signature;
    e["suborbit_size"] = o.nbrs.size();
    e["edges"] = o.edges;
    e["diameter"] = o.diameter;
    e["connected"] = o.connected;
    e["strategy"] = to_string(R.strategy);
    orbs.push_back(e);
  }
  j["orbitals"] = orbs;
  j["diam"] = R.diameter();
  j["runtime_ms"] = R.runtime_ms;
  nlohmann::ordered_json c;
  c["partition"] = R.checks.partition;
  c["connectivity"] = R.checks.connectivity;
  if (R.checks.vertex_transitivity)
    c["vertex_transitivity"] = *R.checks.vertex_transitivity;
  else
    c["vertex_transitivity"] = "skipped";
  if (R.checks.invariant_matches) c["invariant_matches"] = *R.checks.invariant_matches;
  j["checks"] = c;
  return j;
}

std::uint32_t pair_label(const Orbit& X, const std::vector<std::uint32_t>& label, std::uint32_t a, std::uint32_t b) {
  return label[X.apply_transversal_inverse(b, a)];
}

EdgeOrbital orbital_through(const ActionInstance& A, std::uint32_t y, std::uint64_t pair_cap, std::uint64_t seed) {
  if (y == 0 || y >= A.size()) throw std::invalid_argument("orbital_through: y must be a vertex other than the base");
  const Orbit& X = A.orbit;
  EdgeOrbital E;
  E.label = pair_orbitals(X, pair_cap).label;
  E.id = E.label[y];
  auto& o = E.graph;
  o.rep = y;
  for (std::uint32_t z = 1; z < X.size(); ++z)
    if (E.label[z] == E.id) o.nbrs.push_back(z);
  o.edges = static_cast<std::uint64_t>(X.size()) * o.nbrs.size() / 2;
  if (invariant_supported(A)) o.signature = invariant_adjacency(A, 0, y);
  o.dist = base_distances(X, o.nbrs, stabilizer_cells(X, {seed}));
  o.connected = std::find(o.dist.begin(), o.dist.end(), -1) == o.dist.end();
  o.diameter = o.connected ? *std::max_element(o.dist.begin(), o.dist.end()) : -1;
  return E;
}

int pair_dim(const std::pair<Subspace, Subspace>& a, const std::pair<Subspace, Subspace>& b) {
  return std::max({meet(a.first, b.first).dim(), meet(a.first, b.second).dim(), meet(a.second, b.first).dim(),
                   meet(a.second, b.second).dim()});
}

}  // namespace orbdiam
