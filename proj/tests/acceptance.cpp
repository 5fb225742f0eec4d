// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.
// Structural checks (criterion 9) are collected from every computation of criteria 1-8.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "orbdiam/oracle.hpp"
#include "orbdiam/orbital.hpp"
#include "orbdiam/verify.hpp"
#include "orbdiam/witnesses.hpp"

using namespace orbdiam;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> info;
  void fail(const std::string& s) {
    pass = false;
    failures.push_back(s);
  }
  void expect(bool ok, const std::string& s) {
    if (!ok) fail(s);
  }
};

struct Structural {
  int computations = 0;
  std::vector<std::string> failures;
  // Higman's criterion only speaks about primitive actions; imprimitive controls skip it.
  void add(const std::string& what, const Checks& k, bool primitive = true) {
    ++computations;
    std::string bad;
    if (!k.partition) bad += " partition";
    if (primitive && !k.connectivity) bad += " connectivity";
    if (k.vertex_transitivity && !*k.vertex_transitivity) bad += " vertex-transitivity";
    if (k.invariant_matches && !*k.invariant_matches) bad += " invariant-agreement";
    if (!bad.empty()) failures.push_back(what + ":" + bad);
  }
  void add(const std::string& what, const json& checks) {
    Checks k;
    k.partition = checks.value("partition", true);
    k.connectivity = checks.value("connectivity", true);
    if (checks.contains("vertex_transitivity") && checks["vertex_transitivity"].is_boolean())
      k.vertex_transitivity = checks["vertex_transitivity"].get<bool>();
    if (checks.contains("invariant_matches") && checks["invariant_matches"].is_boolean())
      k.invariant_matches = checks["invariant_matches"].get<bool>();
    add(what, k);
  }
  void add_report(const std::string& what, const VerifyReport& V) {
    if (V.certificate.contains("result")) add(what, V.certificate["result"]["checks"]);
  }
  void add_witness(const std::string& what, const WitnessReport& W) {
    ++computations;
    if (W.certificate.contains("orbital_diameter") && W.certificate["orbital_diameter"].get<int>() < 0)
      failures.push_back(what + ": witness orbital disconnected");
  }
};

Structural structural;

ActionSpec spec_b(Family fam, int n, std::uint32_t q, Sign sign, int t, SubspaceClass cls = {}) {
  ActionSpec s;
  s.family = fam;
  s.n = n;
  s.q = q;
  s.sign = sign;
  s.t = t;
  s.cls = cls;
  return s;
}

SubspaceClass ts() { return {SubspaceTag::totally_singular, SubType::na, -1}; }
SubspaceClass nd(SubType st = SubType::na, int disc = -1) { return {SubspaceTag::nondegenerate, st, disc}; }
SubspaceClass nsp() { return {SubspaceTag::nonsingular_point, SubType::na, -1}; }

std::string name(const ActionSpec& s) {
  std::ostringstream o;
  o << to_string(s.family) << s.n << "(" << s.q << ")";
  if (s.sign != Sign::none) o << to_string(s.sign);
  o << " t=" << s.t;
  if (s.cls.tag != SubspaceTag::any) o << " " << s.cls.str();
  return o.str();
}

std::string failed_claims(const VerifyReport& V) {
  std::string s;
  for (const auto& c : V.claims)
    if (!c.pass) s += (s.empty() ? "" : "; ") + c.name + " (" + c.detail + ")";
  return s;
}

// Runs a statement, requires every claim, feeds the structural tally.
VerifyReport verify_into(Outcome& out, const std::string& id, const ActionSpec& s) {
  auto V = verify_statement(id, s);
  structural.add_report(id + " " + name(s), V);
  out.expect(V.pass(), id + " " + name(s) + ": " + failed_claims(V));
  return V;
}

std::string failed_checks(const WitnessReport& W) {
  std::string s;
  for (const auto& c : W.checks)
    if (!c.display && !c.pass) s += (s.empty() ? "" : "; ") + c.name + " (" + c.detail + ")";
  return s;
}

std::string witness_name(const WitnessInstance& w) {
  const auto& p = w.params;
  std::ostringstream o;
  o << to_string(w.id) << " " << to_string(p.family) << p.n << "(" << p.q << ")";
  if (p.sign != Sign::none) o << to_string(p.sign);
  o << " l=" << p.l;
  if (w.id == WitnessId::case_c_elements || w.id == WitnessId::case_c_zero_pair) o << " t=" << p.t;
  return o.str();
}

// ------------------------------------------------------------------ criteria

Outcome criterion1() {
  Outcome out;
  struct Group {
    Family fam;
    int n;
    std::uint32_t q;
    Sign sign;
  };
  for (Group t : {Group{Family::Sp, 4, 2, Sign::none}, Group{Family::SL, 4, 2, Sign::none},
                 Group{Family::Omega, 3, 3, Sign::odd}, Group{Family::SU, 3, 2, Sign::none}}) {
    bool unitary = t.fam == Family::SU;
    auto S = natural_space(t.fam, t.n, Field::of_order(unitary ? std::uint64_t{t.q} * t.q : t.q), t.sign);
    auto G = oracle_group(t.fam, S);
    auto want = expected_order(t.fam, t.n, t.q, t.sign);
    out.expect(G.size() == want, to_string(t.fam) + std::to_string(t.n) + ": brute order " + std::to_string(G.size()) +
                                     " vs " + to_string_u128(want));
  }
  struct Tiny {
    ActionSpec s;
    const char* block;  // why the action is imprimitive; nullptr when primitive
  };
  for (const auto& [s, block] :
       {Tiny{spec_b(Family::Sp, 4, 2, Sign::none, 1, ts()), nullptr}, Tiny{spec_b(Family::Sp, 4, 2, Sign::none, 2, ts()), nullptr},
        Tiny{spec_b(Family::SL, 4, 2, Sign::none, 1), nullptr}, Tiny{spec_b(Family::SL, 4, 2, Sign::none, 2), nullptr},
        Tiny{spec_b(Family::Omega, 3, 3, Sign::odd, 1, ts()), nullptr}, Tiny{spec_b(Family::SU, 3, 2, Sign::none, 1, ts()), nullptr},
        Tiny{spec_b(Family::Sp, 4, 2, Sign::none, 2, nd()), "blocks {U, U^perp}"},
        Tiny{spec_b(Family::Omega, 3, 3, Sign::odd, 1, nd()), "Omega3(3) = A4 is solvable"},
        Tiny{spec_b(Family::SU, 3, 2, Sign::none, 1, nd()), "SU3(2) is solvable"}}) {
    auto A = make_action(s);
    auto G = oracle_group(s.family, A.space);
    auto brute = brute_orbitals(G, A.subspace(0));
    EnumerateOptions eo;
    eo.strategy = Strategy::pair_bfs;
    eo.check_invariant = invariant_supported(A);
    auto R = orbitals_enumerate(A, eo);
    structural.add("tiny " + name(s), R.checks, !block);
    std::vector<std::pair<std::uint64_t, int>> e, b;
    for (const auto& o : R.orbitals) e.emplace_back(o.edges, o.connected ? o.diameter : -1);
    for (std::size_t i = 0; i < brute.edges.size(); ++i) b.emplace_back(brute.edges[i], brute.diameters[i]);
    std::sort(e.begin(), e.end());
    std::sort(b.begin(), b.end());
    out.expect(brute.points.size() == A.size(), name(s) + ": brute |X| " + std::to_string(brute.points.size()));
    out.expect(e == b, name(s) + ": engine orbitals differ from brute force");
    std::string line = name(s) + " |X|=" + std::to_string(A.size()) + " rank " + std::to_string(R.rank()) + " diam " +
                       std::to_string(R.diameter());
    if (block) {
      out.expect(!R.checks.connectivity, name(s) + ": imprimitive control has only connected orbitals");
      line += std::string(" (imprimitive control: ") + block + ")";
    }
    out.info.push_back(line);
  }
  return out;
}

Outcome criterion2() {
  Outcome out;
  int cases = 0;
  for (std::uint32_t q : {2u, 3u})
    for (int n = 3; n <= 6; ++n)
      for (int t = 1; 2 * t < n; ++t) {
        auto s = spec_b(Family::SL, n, q, Sign::none, t);
        verify_into(out, "lemma-pslb", s);
        verify_into(out, "lemma-seged2", s);
        ++cases;
      }
  out.info.push_back(std::to_string(cases) + " (n, q, t) cases");
  return out;
}

Outcome criterion3() {
  Outcome out;
  auto V = verify_into(out, "lemma-k2", spec_b(Family::Omega, 8, 2, Sign::plus, 4, ts()));
  const auto& r = V.certificate["result"];
  out.expect(r["X"] == 135, "|X| = " + r["X"].dump());
  out.expect(r["rank"] == 3, "rank = " + r["rank"].dump());
  out.expect(r["diam"] == 2, "diam = " + r["diam"].dump());
  out.info.push_back("|X|=" + r["X"].dump() + " rank " + r["rank"].dump() + " diam " + r["diam"].dump());
  return out;
}

bool lower_bound_witness(WitnessId id) {
  switch (id) {
    case WitnessId::psl_chain:
    case WitnessId::sp_ts:
    case WitnessId::sp_nd:
    case WitnessId::su_nd:
    case WitnessId::su_ts:
    case WitnessId::o_plus_2l_small_k:
    case WitnessId::o_plus_2l_half:
    case WitnessId::o_minus_2l_minus_ambient:
    case WitnessId::o_minus_2l_plus_ambient:
    case WitnessId::o_odd_k_minus:
    case WitnessId::o_odd_k_plus:
    case WitnessId::o_ts:
      return true;
    default:
      return false;
  }
}

bool perp_block(const WitnessReport& W) { return W.certificate.value("perp_in_X", false); }

Outcome criterion4() {
  Outcome out;
  std::map<WitnessId, int> measured;
  for (const auto& w : standard_witness_instances()) {
    if (!lower_bound_witness(w.id) || w.params.q > 3 || w.params.n > 8) continue;
    measured.try_emplace(w.id, 0);
    auto W = run_witness(w.id, w.params);
    structural.add_witness(witness_name(w), W);
    out.expect(W.pass(), witness_name(w) + ": " + failed_checks(W));
    if (w.id == WitnessId::psl_chain) {
      if (const auto* c = W.find("bfs_distance_equals_chain_length")) ++measured[w.id], out.expect(c->pass, witness_name(w));
      continue;
    }
    const int k = W.params.value("k", 0);
    std::optional<int> d;
    if (W.certificate.contains("d(U,U'')")) d = W.certificate["d(U,U'')"].get<int>();
    if (W.repaired && W.repaired->contains("distance")) d = (*W.repaired)["distance"].get<int>();
    if (!d) {
      out.info.push_back(witness_name(w) + ": |X| = " + W.certificate.value("X", json()).dump() + " over the pair cap, not measured");
      continue;
    }
    ++measured[w.id];
    out.expect(*d >= k, witness_name(w) + ": d(U,U'') = " + std::to_string(*d) + " < k = " + std::to_string(k));
    out.info.push_back(witness_name(w) + (W.repaired ? " (repaired)" : "") + ": d=" + std::to_string(*d) + " k=" + std::to_string(k) +
                       (perp_block(W) ? " (U^perp in X: blocks {U, U^perp}, not primitive)" : ""));
  }
  for (const auto& [id, m] : measured) out.expect(m > 0, to_string(id) + ": no instance measured");
  return out;
}

Outcome criterion5() {
  Outcome out;
  struct Want {
    ActionSpec s;
    std::uint64_t X;
  };
  for (const auto& [s, X] : {Want{spec_b(Family::SU, 5, 2, Sign::none, 1, nd()), 176},
                             Want{spec_b(Family::Omega, 7, 3, Sign::odd, 1, nd(SubType::na, 0)), 0},
                             Want{spec_b(Family::Omega, 7, 3, Sign::odd, 1, nd(SubType::na, 1)), 0},
                             Want{spec_b(Family::Omega, 8, 2, Sign::plus, 1, nsp()), 120}}) {
    auto V = verify_into(out, "thm2-converse", s);
    const auto& r = V.certificate["result"];
    if (X) out.expect(r["X"] == X, name(s) + ": |X| = " + r["X"].dump());
    out.info.push_back(name(s) + " |X|=" + r["X"].dump() + " diam " + r["diam"].dump());
  }
  return out;
}

Outcome criterion6() {
  Outcome out;
  for (const auto& w : standard_witness_instances()) {
    bool sp = w.id == WitnessId::nd2_diam3 && w.params.family == Family::Sp && w.params.n == 6 && w.params.q == 2;
    bool o2 = w.id == WitnessId::o2minus_q1mod4 && w.params.n == 7 && w.params.q == 5;
    if (!sp && !o2) continue;
    auto W = run_witness(w.id, w.params);
    structural.add_witness(witness_name(w), W);
    out.expect(W.pass(), witness_name(w) + ": " + failed_checks(W));
    const auto* nc = W.find("neighbour_certificate");
    const auto* sc = W.find("span_certificate");
    out.expect(nc || sc, witness_name(w) + ": no certificate");
    if (nc) out.expect(nc->pass, witness_name(w) + ": neighbour certificate fails");
    if (sc) out.expect(sc->pass, witness_name(w) + ": span certificate fails");
    if (const auto* b = W.find("bfs_distance_at_least_3")) out.info.push_back(witness_name(w) + ": BFS " + b->detail);
    else out.info.push_back(witness_name(w) + ": certificate level");
  }
  return out;
}

Outcome criterion7() {
  Outcome out;
  for (std::uint32_t q : {2u, 3u})
    for (int t : {1, 2}) {
      ActionSpec s;
      s.action = ActionCase::c;
      s.family = Family::SL;
      s.n = 4;
      s.q = q;
      s.t = t;
      verify_into(out, "lemma-pairofspaces", s);
      WitnessParams p;
      p.family = Family::SL;
      p.n = 4;
      p.q = q;
      p.t = t;
      WitnessInstance el{WitnessId::case_c_elements, p};
      auto W = run_witness(el.id, p);
      structural.add_witness(witness_name(el), W);
      out.expect(W.pass(), witness_name(el) + ": " + failed_checks(W));
      WitnessInstance zp{WitnessId::case_c_zero_pair, p};
      try {
        auto Z = run_witness(zp.id, p);
        structural.add_witness(witness_name(zp), Z);
        out.expect(Z.pass(), witness_name(zp) + ": " + failed_checks(Z));
        if (const auto* c = Z.find("d(A,B)>=t")) out.info.push_back(witness_name(zp) + ": d(A,B) = " + c->detail);
      } catch (const HypothesisError& e) {
        out.info.push_back(witness_name(zp) + ": not defined here (" + e.what() + ")");
      }
    }
  return out;
}

Outcome criterion8() {
  Outcome out;
  for (auto [sign, X] : {std::pair{Sign::plus, 36}, std::pair{Sign::minus, 28}}) {
    ActionSpec s;
    s.action = ActionCase::d;
    s.family = Family::Sp;
    s.n = 6;
    s.q = 2;
    s.sign = sign;
    auto V = verify_into(out, "case-d", s);
    const auto& r = V.certificate["result"];
    out.expect(r["X"] == X, "|X| = " + r["X"].dump());
    out.expect(r["rank"] == 2, "rank = " + r["rank"].dump());
    out.expect(r["diam"] == 1, "diam = " + r["diam"].dump());
    out.info.push_back(to_string(sign) + ": |X|=" + r["X"].dump() + " rank " + r["rank"].dump() + " diam " + r["diam"].dump());
  }
  return out;
}

Outcome criterion9() {
  Outcome out;
  for (const auto& f : structural.failures) out.fail(f);
  out.info.push_back(std::to_string(structural.computations) + " computations checked");
  return out;
}

Outcome criterion10() {
  Outcome out;
  auto s = spec_b(Family::Omega, 7, 3, Sign::odd, 2, nd(SubType::minus));
  VerifyOptions opt;
  bool ok = true;
  auto j = probe_o2minus(s, opt, &ok);
  out.expect(ok, "probe internal checks fail");
  out.expect(j["X"] == 22113, "|X| = " + j["X"].dump());
  out.expect(j["truth_claim"] == false, "the probe makes a truth claim");
  out.expect(j["grade"].get<std::string>().rfind("exact", 0) == 0, "not an exact run");
  for (const auto& o : j["orbitals"]) {
    std::string tag = "orbital " + o["orbital"].dump();
    out.expect(o["connected"] == true && o["diameter"].get<int>() > 0, tag + ": no definite diameter");
    out.expect(o.contains("certificate") && o["certificate"]["holds"] == true, tag + ": certificate missing or failing");
  }
  std::ostringstream d;
  for (const auto& o : j["orbitals"]) d << o["diameter"].get<int>() << " ";
  out.info.push_back("|X|=" + j["X"].dump() + " rank " + j["summary"]["rank"].dump() + " orbital diameters " + d.str());
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  // Criterion 9 reads the tally of 1-8, so it runs after them.
  const std::vector<Criterion> criteria = {
      {1, "oracle certification on tiny cases", 120, criterion1},
      {2, "SL: diam = k and d(A,B) = k - dim(A∩B), n <= 6, q <= 3, t < n/2", 300, criterion2},
      {3, "half-spin Omega8+(2): |X| = 135, rank 3, diam 2", 120, criterion3},
      {4, "witness distances d(U,U'') >= k, q <= 3, n <= 8", 900, criterion4},
      {5, "k = 1 converse: every orbital diameter is 2", 600, criterion5},
      {6, "diameter >= 3 obstructions", 1800, criterion6},
      {7, "case c, n = 4, t in {1,2}, q in {2,3}", 300, criterion7},
      {8, "case d, Sp6(2): rank 2, diam 1", 60, criterion8},
      {9, "structural invariants across criteria 1-8", 0, criterion9},
      {10, "O2- probe, q = 3, n = 7: definite per-orbital report", 7200, criterion10},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s));
    all = all && o.pass;
    std::printf("criterion %d: %s  %s (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs);
    for (const auto& i : o.info) std::printf("    %s\n", i.c_str());
    for (const auto& f : o.failures) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
