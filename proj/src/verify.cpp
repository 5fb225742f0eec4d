#include "orbdiam/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbdiam {

using json = nlohmann::ordered_json;

void VerifyReport::claim(std::string name, bool ok, std::string detail) {
  claims.push_back({std::move(name), ok, std::move(detail), false});
}

bool VerifyReport::pass() const {
  return !claims.empty() && std::all_of(claims.begin(), claims.end(), [](const PropertyCheck& c) { return c.pass; });
}

json VerifyReport::to_json() const {
  json j;
  j["statement"] = statement;
  j["params"] = params;
  json cs = json::array();
  for (const auto& c : claims) {
    json e{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(e);
  }
  j["claims"] = cs;
  j["certificate"] = certificate;
  if (!notes.empty()) j["notes"] = notes;
  j["internal_checks_ok"] = internal_ok;
  j["result"] = pass() ? "PASS" : "FAIL";
  return j;
}

namespace {

bool is_orthogonal(Family f) { return f == Family::Omega || f == Family::GO; }
bool is_unitary(Family f) { return f == Family::SU || f == Family::GU; }
int k_of(const ActionSpec& s) { return std::min(s.t, s.n - s.t); }

void require(bool ok, const std::string& why) {
  if (!ok) throw HypothesisError(why);
}

bool half_spin(const ActionSpec& s) {
  return is_orthogonal(s.family) && s.sign == Sign::plus && 2 * s.t == s.n &&
         s.cls.tag == SubspaceTag::totally_singular;
}

void standard_action(const ActionSpec& s) {
  switch (s.action) {
    case ActionCase::b:
      require(s.t >= 1 && s.t < s.n, "case b needs 1 <= t < n");
      if (s.family == Family::SL)
        require(s.cls.tag == SubspaceTag::any, "SL acts on arbitrary subspaces (class any)");
      else
        require(s.cls.tag == SubspaceTag::totally_singular || s.cls.tag == SubspaceTag::nondegenerate ||
                    s.cls.tag == SubspaceTag::nonsingular_point,
                "X must consist of totally singular, nondegenerate or nonsingular subspaces");
      break;
    case ActionCase::c:
      require(s.family == Family::SL, "case c is an SL action");
      require(s.t >= 1 && 2 * s.t <= s.n, "case c needs 1 <= t <= n/2");
      break;
    case ActionCase::d:
      require(s.family == Family::Sp && s.q % 2 == 0 && s.n % 2 == 0, "case d needs Sp_n(q), q even");
      break;
  }
}

void require_case_b(const ActionSpec& s) {
  require(s.action == ActionCase::b, "statement concerns subspace actions (case b)");
  standard_action(s);
}

json spec_json(const ActionSpec& s) {
  json j;
  j["case"] = to_string(s.action);
  j["family"] = to_string(s.family);
  j["n"] = s.n;
  j["q"] = s.q;
  j["epsilon"] = to_string(s.sign);
  j["t"] = s.t;
  j["class"] = s.cls.str();
  return j;
}

struct Computed {
  ActionInstance A;
  OrbitalResult R;
};

// Exact orbitals: pair BFS with the invariant cross-check where |X| allows, else the proved invariant.
Computed compute_exact(const ActionSpec& spec, const VerifyOptions& opt, VerifyReport& V) {
  Computed c{make_action(spec), {}};
  EnumerateOptions eo;
  eo.seed = opt.seed;
  eo.pair_cap = opt.pair_cap;
  if (c.A.size() <= opt.pair_cap) {
    eo.strategy = Strategy::pair_bfs;
    eo.check_invariant = invariant_supported(c.A);
  } else if (invariant_supported(c.A)) {
    eo.strategy = Strategy::invariant;
  } else {
    throw BudgetExceeded("exact orbitals need pair BFS and |X| = " + std::to_string(c.A.size()) +
                             " exceeds the pair cap",
                         c.A.size());
  }
  c.R = orbitals_enumerate(c.A, eo);
  const auto& k = c.R.checks;
  V.internal_ok = k.partition && k.connectivity && k.vertex_transitivity.value_or(true) && k.invariant_matches.value_or(true);
  V.certificate["result"] = result_json(c.A, c.R);
  return c;
}

WitnessParams witness_params(const ActionSpec& s, int l, const VerifyOptions& opt) {
  WitnessParams p;
  p.family = s.family;
  p.n = s.n;
  p.q = s.q;
  p.sign = s.sign;
  p.l = l;
  p.t = s.t;
  p.pair_cap = opt.pair_cap;
  p.budget = s.budget;
  return p;
}

void absorb_witness(VerifyReport& V, const WitnessReport& W) {
  for (const auto& c : W.checks)
    if (!c.display) V.claim("witness " + W.id + ": " + c.name, c.pass, c.detail);
  if (!W.display_ok()) V.notes.push_back("witness " + W.id + ": literal display fails its checks; claims use the repaired stand-in");
  V.certificate["witness"] = W.to_json();
}

VerifyReport start(const std::string& id, const ActionSpec& s) {
  VerifyReport V;
  V.statement = id;
  V.params = spec_json(s);
  return V;
}

int seged_violations(const ActionInstance& A, const OrbitalGraph& o, int k, int l, std::string& where) {
  Subspace U = A.subspace(0);
  int bad = 0;
  for (std::uint32_t v = 0; v < A.size(); ++v) {
    if (o.dist[v] < 0) continue;
    int r = meet(U, A.subspace(v)).dim();
    int need = k - r <= 0 ? 0 : (k - r + l - 1) / l;
    if (o.dist[v] < need) {
      if (!bad) where = A.describe(v);
      ++bad;
    }
  }
  return bad;
}

// ------------------------------------------------------------ statements

// Nondegenerate n/2-spaces whose perp lies in X: {U, U^perp} is a block.
void require_no_perp_block(const ActionSpec& s) {
  if (s.action != ActionCase::b || s.cls.tag != SubspaceTag::nondegenerate || 2 * s.t != s.n) return;
  auto A = make_action(s);
  Subspace U = A.subspace(0);
  require(!A.index_of(perp_radical(A.space, U).perp), "U and its perp both lie in X, so {U, U^perp} is a block and G is not primitive");
}

VerifyReport run_thm1(const ActionSpec& s, const VerifyOptions& opt) {
  require_no_perp_block(s);
  auto V = start("thm1", s);
  auto c = compute_exact(s, opt, V);
  const int k = c.A.k;
  const int d = c.R.diameter();
  if (half_spin(s)) {
    V.claim("diam = floor(k/2)", d == k / 2, "diam " + std::to_string(d) + ", k " + std::to_string(k));
  } else {
    V.claim("diam >= k", d >= k, "diam " + std::to_string(d) + ", k " + std::to_string(k));
  }
  if (d < 0) V.notes.push_back("a non-diagonal orbital graph is disconnected, so the action is not primitive");
  if (opt.run_witness && s.action == ActionCase::b) {
    if (auto w = witness_for(s)) {
      w->params.pair_cap = opt.pair_cap;
      try {
        absorb_witness(V, run_witness(w->id, w->params));
      } catch (const HypothesisError& e) {
        V.notes.push_back(std::string("no witness instance here: ") + e.what());
      }
    }
  }
  return V;
}

VerifyReport run_thm2_converse(const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start("thm2-converse", s);
  auto c = compute_exact(s, opt, V);
  for (std::size_t i = 0; i < c.R.orbitals.size(); ++i) {
    const auto& o = c.R.orbitals[i];
    V.claim("orbital " + std::to_string(i) + " has diameter 2", o.diameter == 2 && o.connected,
            "suborbit " + std::to_string(o.nbrs.size()) + ", diameter " + std::to_string(o.diameter));
  }
  V.claim("diam = 2", c.R.diameter() == 2, std::to_string(c.R.diameter()));
  return V;
}

VerifyReport run_seged(const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start("lemma-seged", s);
  auto c = compute_exact(s, opt, V);
  const int k = s.t;
  Subspace U = c.A.subspace(0);
  json per = json::array();
  for (std::size_t i = 0; i < c.R.orbitals.size(); ++i) {
    const auto& o = c.R.orbitals[i];
    int l = k - meet(U, c.A.subspace(o.rep)).dim();
    std::string where;
    int bad = seged_violations(c.A, o, k, l, where);
    per.push_back({{"orbital", i}, {"l", l}, {"violations", bad}});
    V.claim("orbital " + std::to_string(i) + " (l = " + std::to_string(l) + "): d(U,B) >= ceil((k - dim(U∩B))/l)",
            bad == 0, bad ? "first violation at " + where : "checked " + std::to_string(c.A.size()) + " vertices");
  }
  V.certificate["per_orbital"] = per;
  return V;
}

VerifyReport run_seged2(const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start("lemma-seged2", s);
  auto c = compute_exact(s, opt, V);
  const int k = s.t;
  Subspace U = c.A.subspace(0);
  const OrbitalGraph* O = nullptr;
  for (const auto& o : c.R.orbitals)
    if (meet(U, c.A.subspace(o.rep)).dim() == k - 1) O = &o;
  V.claim("orbital with dim(U∩U') = k-1 exists", O != nullptr);
  if (!O) return V;
  std::uint32_t bad = 0;
  for (std::uint32_t v = 0; v < c.A.size(); ++v)
    if (O->dist[v] != k - meet(U, c.A.subspace(v)).dim()) ++bad;
  V.claim("d(A,B) = k - dim(A∩B) for every B", bad == 0, std::to_string(bad) + " mismatches");
  V.claim("diameter of the orbital is k", O->diameter == k, std::to_string(O->diameter));
  absorb_witness(V, run_witness(WitnessId::psl_chain, witness_params(s, k, opt)));
  return V;
}

VerifyReport run_pslb(const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start("lemma-pslb", s);
  auto c = compute_exact(s, opt, V);
  V.claim("diam = k", c.R.diameter() == c.A.k, "diam " + std::to_string(c.R.diameter()) + ", k " + std::to_string(c.A.k));
  return V;
}

VerifyReport run_k2(const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start("lemma-k2", s);
  auto c = compute_exact(s, opt, V);
  const int k = c.A.k;
  V.claim("rank = floor(k/2) + 1", static_cast<int>(c.R.rank()) == k / 2 + 1, std::to_string(c.R.rank()));
  V.claim("diam = floor(k/2)", c.R.diameter() == k / 2, std::to_string(c.R.diameter()));
  try {
    absorb_witness(V, run_witness(WitnessId::halfspin_WWW, witness_params(s, k, opt)));
  } catch (const HypothesisError& e) {
    V.notes.push_back(std::string("half-spin witness not run: ") + e.what());
  }
  return V;
}

VerifyReport run_orbit(const ActionSpec& s, const VerifyOptions&) {
  auto V = start("lemma-orbit", s);
  auto A = make_action(s);
  require(A.class_total.has_value(), "no closed-form class size for these parameters");
  const std::uint64_t total = *A.class_total, x = A.size();
  V.certificate["X"] = x;
  V.certificate["class_total"] = total;
  V.claim("the class is the union of at most two orbits", total == x || total == 2 * x,
          std::to_string(total) + " / " + std::to_string(x));
  if (half_spin(s) && s.family == Family::Omega) {
    V.claim("two orbits for maximal totally singular spaces", total == 2 * x);
    Subspace U = A.subspace(0);
    std::uint32_t odd = 0;
    for (std::uint32_t v = 0; v < A.size(); ++v)
      if ((A.k - meet(U, A.subspace(v)).dim()) % 2) ++odd;
    V.claim("k - dim(A∩B) is even on the orbit of A", odd == 0, std::to_string(odd) + " vertices of odd parity");
  }
  return V;
}

VerifyReport run_pairofspaces(const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start("lemma-pairofspaces", s);
  compute_exact(s, opt, V);
  auto p = witness_params(s, 1, opt);
  auto W = run_witness(WitnessId::case_c_elements, p);
  for (const auto& c : W.checks)
    if (!c.display) V.claim(c.name, c.pass, c.detail);
  for (const auto& c : W.checks)
    if (c.display) V.claim(c.name, c.pass, c.detail);
  V.certificate["elements"] = W.to_json();
  if (2 * s.t == s.n) {
    auto Z = run_witness(WitnessId::case_c_zero_pair, p);
    for (const auto& c : Z.checks) V.claim("zero pair: " + c.name, c.pass, c.detail);
    V.certificate["zero_pair"] = Z.to_json();
  }
  return V;
}

VerifyReport run_witness_statement(const std::string& id, WitnessId w, const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start(id, s);
  auto W = run_witness(w, witness_params(s, 1, opt));
  for (const auto& c : W.checks) V.claim(c.name, c.pass, c.detail);
  V.certificate["witness"] = W.to_json();
  V.notes.insert(V.notes.end(), W.notes.begin(), W.notes.end());
  return V;
}

VerifyReport run_case_d(const ActionSpec& s, const VerifyOptions& opt) {
  auto V = start("case-d", s);
  auto c = compute_exact(s, opt, V);
  V.claim("rank = 2", c.R.rank() == 2, std::to_string(c.R.rank()));
  V.claim("diam = 1", c.R.diameter() == 1, std::to_string(c.R.diameter()));
  return V;
}

std::vector<Statement> build_registry() {
  std::vector<Statement> r;
  r.push_back({"thm1", "diam >= k, or diam = floor(k/2) on one family of maximal totally singular spaces of Omega+",
               [](const ActionSpec& s) {
                 standard_action(s);
                 if (half_spin(s))
                   require(s.family == Family::Omega,
                           "GO does not preserve the two families of maximal totally singular spaces; the union is not primitive");
               },
               run_thm1});
  r.push_back({"thm2-converse", "k = 1 and X not totally singular: every orbital graph has diameter 2",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(s.family != Family::SL, "the converse concerns the classical groups other than SL");
                 require(k_of(s) == 1, "needs k = 1");
                 require(s.cls.tag == SubspaceTag::nondegenerate || s.cls.tag == SubspaceTag::nonsingular_point,
                         "X must not be totally singular");
                 require(s.n >= 5, "needs n >= 5");
               },
               run_thm2_converse});
  r.push_back({"lemma-seged", "an orbital with dim(U∩U') = k-l gives d(U,B) >= ceil((k - dim(U∩B))/l)",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(2 * s.t <= s.n, "needs dim U = k <= n/2");
               },
               run_seged});
  r.push_back({"lemma-seged2", "SL: the orbital with dim(U∩U') = k-1 has d(A,B) = k - dim(A∩B) and diameter k",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(s.family == Family::SL, "SL only");
                 require(2 * s.t <= s.n, "needs t <= n/2");
               },
               run_seged2});
  r.push_back({"lemma-pslb", "SL: diam = k provided k < n/2",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(s.family == Family::SL, "SL only");
                 require(2 * k_of(s) < s.n, "needs k < n/2");
               },
               run_pslb});
  r.push_back({"lemma-k2", "Omega+ on one family of maximal totally singular spaces: rank floor(k/2)+1, diam floor(k/2)",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(s.family == Family::Omega && half_spin(s), "needs Omega+, t = n/2, totally singular");
               },
               run_k2});
  r.push_back({"lemma-orbit", "a class of subspaces is the union of at most two Omega-orbits",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(is_orthogonal(s.family), "orthogonal families only");
               },
               run_orbit});
  r.push_back({"lemma-pairofspaces", "case c: d(A,B) >= t - dim(A,B) in O1, and the sigma/p_i/h identities",
               [](const ActionSpec& s) {
                 require(s.action == ActionCase::c, "case c only");
                 standard_action(s);
               },
               run_pairofspaces});
  r.push_back({"nd2-diam3", "nondegenerate 2-spaces: U and U'' have no common neighbour in the orbital of {U, U'}",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(s.t == 2 && s.cls.tag == SubspaceTag::nondegenerate, "needs nondegenerate 2-spaces");
                 require(s.family == Family::Sp || is_unitary(s.family) || is_orthogonal(s.family), "classical families only");
                 require(s.n >= 4, "needs n >= 4");
                 require(!(is_orthogonal(s.family) && s.n == 4 && s.sign == Sign::minus), "(n, eps) = (4, -) is excluded");
               },
               [](const ActionSpec& s, const VerifyOptions& o) {
                 return run_witness_statement("nd2-diam3", WitnessId::nd2_diam3, s, o);
               }});
  r.push_back({"o2minus-q1mod4", "O2- 2-spaces, q = 1 mod 4: the no-common-neighbour certificate holds",
               [](const ActionSpec& s) {
                 require_case_b(s);
                 require(is_orthogonal(s.family) && s.q % 4 == 1, "needs an orthogonal family with q = 1 mod 4");
                 require(s.n >= 7, "needs n >= 7");
                 require(s.t == 2 && s.cls.tag == SubspaceTag::nondegenerate && s.cls.subtype == SubType::minus,
                         "needs X of type O2-");
               },
               [](const ActionSpec& s, const VerifyOptions& o) {
                 return run_witness_statement("o2minus-q1mod4", WitnessId::o2minus_q1mod4, s, o);
               }});
  r.push_back({"case-d", "Sp_n(q), q even, on quadratic forms of one type: 2-transitive",
               [](const ActionSpec& s) {
                 require(s.action == ActionCase::d, "case d only");
                 standard_action(s);
               },
               run_case_d});
  return r;
}

}  // namespace

const std::vector<Statement>& statement_registry() {
  static const std::vector<Statement> r = build_registry();
  return r;
}

const Statement& find_statement(const std::string& id) {
  for (const auto& s : statement_registry())
    if (s.id == id) return s;
  throw std::invalid_argument("unknown statement '" + id + "'");
}

VerifyReport verify_statement(const std::string& id, const ActionSpec& spec, const VerifyOptions& opt) {
  const auto& st = find_statement(id);
  st.hypothesis(spec);
  return st.run(spec, opt);
}

std::optional<WitnessInstance> witness_for(const ActionSpec& s) {
  if (s.action != ActionCase::b || 2 * s.t > s.n) return std::nullopt;
  const int k = s.t;
  auto make = [&](WitnessId id, int l) {
    WitnessParams p;
    p.family = s.family;
    p.n = s.n;
    p.q = s.q;
    p.sign = s.sign;
    p.l = l;
    p.budget = s.budget;
    return WitnessInstance{id, p};
  };
  const auto tag = s.cls.tag;
  if (s.family == Family::SL) return make(WitnessId::psl_chain, k);
  if (s.family == Family::Sp) {
    if (tag == SubspaceTag::totally_singular) return make(WitnessId::sp_ts, k);
    if (tag == SubspaceTag::nondegenerate && k % 2 == 0) return make(WitnessId::sp_nd, k / 2);
    return std::nullopt;
  }
  if (is_unitary(s.family)) {
    if (tag == SubspaceTag::totally_singular) return make(WitnessId::su_ts, k);
    if (tag == SubspaceTag::nondegenerate) return make(WitnessId::su_nd, k);
    return std::nullopt;
  }
  if (tag == SubspaceTag::totally_singular) {
    if (half_spin(s)) return make(WitnessId::halfspin_WWW, k);
    return make(WitnessId::o_ts, k);
  }
  if (tag != SubspaceTag::nondegenerate) return std::nullopt;
  const bool minus = s.sign == Sign::minus;
  switch (s.cls.subtype) {
    case SubType::plus: return make(minus ? WitnessId::o_plus_2l_half : WitnessId::o_plus_2l_small_k, k / 2);
    case SubType::minus:
      return make(minus ? WitnessId::o_minus_2l_minus_ambient : WitnessId::o_minus_2l_plus_ambient, k / 2);
    case SubType::odd: return make(minus ? WitnessId::o_odd_k_minus : WitnessId::o_odd_k_plus, (k - 1) / 2);
    default: return std::nullopt;
  }
}

// ------------------------------------------------------------ conjecture probe

json probe_o2minus(const ActionSpec& spec, const VerifyOptions& opt, bool* internal_ok) {
  require(spec.action == ActionCase::b && is_orthogonal(spec.family), "the probe concerns orthogonal subspace actions");
  require(spec.q % 4 == 3, "the probe needs q = 3 mod 4");
  ActionSpec s = spec;
  s.t = 2;
  s.cls = {SubspaceTag::nondegenerate, SubType::minus, spec.cls.disc};
  auto A = make_action(s);
  json j;
  j["conjecture"] = "o2minus_q3mod4";
  j["statement"] = "orbital diameter on O2- 2-spaces, q = 3 mod 4, conjectured to be at least 3";
  j["truth_claim"] = false;
  j["action"] = json::parse(A.key());
  j["X"] = A.size();
  if (A.class_total) j["class_total"] = *A.class_total;
  if (s.n < 7) j["notes"].push_back("n < 7 lies outside the range the conjecture is stated for");

  const bool exact = A.size() <= opt.pair_cap;
  EnumerateOptions eo;
  eo.strategy = exact ? Strategy::pair_bfs : Strategy::stab_sample;
  eo.seed = opt.seed;
  eo.pair_cap = opt.pair_cap;
  auto R = orbitals_enumerate(A, eo);
  const auto& k = R.checks;
  bool ok = k.partition && k.connectivity && k.vertex_transitivity.value_or(true);
  if (!k.connectivity) j["notes"].push_back("a non-diagonal orbital graph is disconnected, so this action is imprimitive");
  j["grade"] = exact ? "exact (pair BFS)" : "exploration (sampled stabilizer cells; distances are upper bounds on resolution)";
  j["strategy"] = to_string(R.strategy);

  Subspace U = A.subspace(0);
  json orbs = json::array();
  int max_d = 0;
  std::size_t ge3 = 0;
  for (std::size_t i = 0; i < R.orbitals.size(); ++i) {
    const auto& o = R.orbitals[i];
    json e;
    e["orbital"] = i;
    e["rep"] = A.describe(o.rep);
    e["dim(U∩rep)"] = meet(U, A.subspace(o.rep)).dim();
    if (o.signature) e["signature"] = *o.signature;
    e["suborbit_size"] = o.nbrs.size();
    e["connected"] = o.connected;
    e["diameter"] = o.diameter;
    max_d = std::max(max_d, o.connected ? o.diameter : max_d);
    if (o.diameter >= 3) ++ge3;
    if (exact && o.connected) {
      EdgeOrbital E{o, R.label, R.label[o.rep]};
      std::uint32_t far = 0;
      for (std::uint32_t v = 0; v < A.size(); ++v)
        if (o.dist[v] > o.dist[far]) far = v;
      json cert;
      cert["farthest"] = A.describe(far);
      cert["distance"] = o.dist[far];
      if (o.diameter >= 3) {
        auto nc = neighbour_certificate(A, E, far);
        cert["kind"] = "no common neighbour of the base and the farthest vertex";
        cert["neighbours_checked"] = nc.checked;
        cert["holds"] = nc.holds();
        Subspace F = A.subspace(far), W = A.subspace(o.rep);
        if (meet(U, W).dim() == 1 && meet(U, F).dim() == 0) {
          auto sc = span_certificate(A.space, U, W, F);
          cert["span_candidates"] = sc.candidates;
          cert["span_survivors"] = sc.survivors;
        }
        ok = ok && nc.holds();
      } else {
        std::size_t two = 0, witnessed = 0;
        for (std::uint32_t v = 0; v < A.size(); ++v) {
          if (o.dist[v] != 2) continue;
          ++two;
          for (std::uint32_t w : o.nbrs)
            if (E.adjacent(A.orbit, w, v)) {
              ++witnessed;
              break;
            }
        }
        cert["kind"] = "explicit common neighbour for every vertex at distance 2";
        cert["distance_two_vertices"] = two;
        cert["with_common_neighbour"] = witnessed;
        cert["holds"] = two == witnessed;
        ok = ok && two == witnessed;
      }
      e["certificate"] = cert;
    }
    orbs.push_back(e);
  }
  j["orbitals"] = orbs;
  j["summary"] = {{"rank", R.rank()},
                  {"max_orbital_diameter", R.checks.connectivity ? R.diameter() : -1},
                  {"orbitals_with_diameter_at_least_3", ge3},
                  {"largest_connected_diameter", max_d}};
  j["checks"] = {{"partition", k.partition},
                 {"connectivity", k.connectivity},
                 {"vertex_transitivity", k.vertex_transitivity ? json(*k.vertex_transitivity) : json("skipped")}};
  if (internal_ok) *internal_ok = ok;
  return j;
}

}  // namespace orbdiam
