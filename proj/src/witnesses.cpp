#include "orbdiam/witnesses.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace orbdiam {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::pair<WitnessId, const char*>>& id_names() {
  static const std::vector<std::pair<WitnessId, const char*>> names = {
      {WitnessId::psl_chain, "psl_chain"},
      {WitnessId::sp_ts, "sp_ts"},
      {WitnessId::sp_nd, "sp_nd"},
      {WitnessId::su_nd, "su_nd"},
      {WitnessId::su_ts, "su_ts"},
      {WitnessId::o_plus_2l_small_k, "o_plus_2l_small_k"},
      {WitnessId::o_plus_2l_half, "o_plus_2l_half"},
      {WitnessId::o_minus_2l_minus_ambient, "o_minus_2l_minus_ambient"},
      {WitnessId::o_minus_2l_plus_ambient, "o_minus_2l_plus_ambient"},
      {WitnessId::o_odd_k_minus, "o_odd_k_minus"},
      {WitnessId::o_odd_k_plus, "o_odd_k_plus"},
      {WitnessId::o_ts, "o_ts"},
      {WitnessId::halfspin_WWW, "halfspin_WWW"},
      {WitnessId::o2minus_q1mod4, "o2minus_q1mod4"},
      {WitnessId::nd2_diam3, "nd2_diam3"},
      {WitnessId::unitary_point_common_nbr, "unitary_point_common_nbr"},
      {WitnessId::orth_point_common_nbr, "orth_point_common_nbr"},
      {WitnessId::qeven_point_common_nbr, "qeven_point_common_nbr"},
      {WitnessId::case_c_elements, "case_c_elements"},
      {WitnessId::case_c_zero_pair, "case_c_zero_pair"},
  };
  return names;
}

bool is_unitary(Family f) { return f == Family::SU || f == Family::GU; }
bool is_orthogonal(Family f) { return f == Family::Omega || f == Family::GO; }

Field field_of(const WitnessParams& p) {
  return Field::of_order(is_unitary(p.family) ? std::uint64_t{p.q} * p.q : p.q);
}

ClassicalSpace space_of(const WitnessParams& p) {
  try {
    return natural_space(p.family, p.n, field_of(p), p.sign);
  } catch (const std::invalid_argument& e) {
    throw HypothesisError(e.what());
  }
}

std::string lab(const char* p, int i) { return p + std::to_string(i); }

void append_range(std::vector<std::string>& out, const char* p, int a, int b) {
  for (int i = a; i <= b; ++i) out.push_back(lab(p, i));
}

json coords(const Vec& v) {
  json a = json::array();
  for (Elem x : v) a.push_back(x.value);
  return a;
}

json space_json(const Subspace& A, const std::vector<std::string>& display = {}) {
  json j;
  if (!display.empty()) j["display"] = display;
  json rows = json::array();
  for (const Vec& r : A.rows()) rows.push_back(coords(r));
  j["basis"] = rows;
  return j;
}

// Literal spans, with the ambient rank so that a dependent display is caught.
struct Span {
  std::vector<std::string> exprs;
  Subspace sub;
  bool independent = false;
};

Span make_span(const ClassicalSpace& S, std::vector<std::string> exprs, const Scalars& sc,
               const std::map<std::string, Vec>& extra = {}) {
  std::vector<Vec> rows;
  for (const auto& e : exprs) {
    try {
      rows.push_back(parse_vector(S, e, sc, extra));
    } catch (const std::out_of_range& err) {
      throw HypothesisError("display vector " + e + " does not exist here: " + err.what());
    }
  }
  Span s;
  s.sub = Subspace::span(S.V, rows);
  s.independent = s.sub.dim() == static_cast<int>(rows.size());
  s.exprs = std::move(exprs);
  return s;
}

std::string elem_str(Elem e) { return std::to_string(e.value); }

std::optional<ActionInstance> try_action(const WitnessParams& p, const Subspace& base, WitnessReport& R) {
  ActionSpec s;
  s.action = ActionCase::b;
  s.family = p.family;
  s.n = p.n;
  s.q = p.q;
  s.sign = p.sign;
  s.t = base.dim();
  s.budget = p.budget;
  auto S = space_of(p);
  if (S.kind != FormKind::linear) s.cls = classify_subspace(S, base);
  try {
    return make_action_from(s, base);
  } catch (const BudgetExceeded& e) {
    R.notes.push_back(std::string("orbit not built: ") + e.what());
    return std::nullopt;
  }
}

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

// Lemma-seged bound d(U, B) >= ceil((k - dim(U ∩ B)) / l) on every reachable vertex.
std::pair<bool, std::string> seged_bound(const ActionInstance& A, const OrbitalGraph& o, int k, int l) {
  Subspace U = A.subspace(0);
  for (std::uint32_t v = 0; v < A.size(); ++v) {
    if (o.dist[v] < 0) continue;
    int need = ceil_div(k - meet(U, A.subspace(v)).dim(), l);
    if (o.dist[v] < need)
      return {false, "vertex " + A.describe(v) + " at distance " + std::to_string(o.dist[v]) + " < " + std::to_string(need)};
  }
  return {true, "checked " + std::to_string(A.size()) + " vertices"};
}

// ------------------------------------------------------------ subspace triples

struct TripleDisplay {
  std::vector<std::string> U, U1, U2;
  int k = 0;
  SubspaceTag tag = SubspaceTag::nondegenerate;
  SubType subtype = SubType::na;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw HypothesisError(what);
}

TripleDisplay triple_display(WitnessId id, const WitnessParams& p, WitnessReport& R) {
  const int l = p.l;
  require(l >= 1, "block size l must be positive");
  TripleDisplay d;
  auto ts_like = [&](int k) {
    append_range(d.U, "e", 1, k);
    append_range(d.U1, "e", 1, k - 1);
    d.U1.push_back(lab("f", k));
    append_range(d.U2, "f", 1, k);
    d.k = k;
    d.tag = SubspaceTag::totally_singular;
  };
  auto plus_block = [&] {
    append_range(d.U, "e", 1, l);
    append_range(d.U, "f", 1, l);
    append_range(d.U1, "e", 1, l);
    append_range(d.U1, "f", 1, l - 1);
    d.U1.push_back(lab("f", l) + "+" + lab("f", l + 1));
    append_range(d.U2, "e", l + 1, 2 * l);
    append_range(d.U2, "f", l + 1, 2 * l);
    d.k = 2 * l;
  };
  switch (id) {
    case WitnessId::sp_ts:
      require(p.family == Family::Sp, "sp_ts needs the symplectic family");
      ts_like(l);
      break;
    case WitnessId::su_ts:
      require(is_unitary(p.family), "su_ts needs a unitary family");
      ts_like(l);
      R.notes.push_back("hyperbolic pairs e_i, f_i of the unitary basis play the symplectic basis");
      break;
    case WitnessId::o_ts:
      require(is_orthogonal(p.family), "o_ts needs an orthogonal family");
      ts_like(l);
      R.notes.push_back("no explicit display for orthogonal totally singular spaces; the symplectic-style triple is used");
      break;
    case WitnessId::sp_nd:
      require(p.family == Family::Sp, "sp_nd needs the symplectic family");
      plus_block();
      break;
    case WitnessId::su_nd:
      require(is_unitary(p.family), "su_nd needs a unitary family");
      append_range(d.U, "o", 1, l);
      append_range(d.U1, "o", 1, l - 1);
      d.U1.push_back(lab("o", l + 1));
      append_range(d.U2, "o", l + 1, 2 * l);
      d.k = l;
      R.notes.push_back("o_i is an orthonormal basis found by search");
      break;
    case WitnessId::o_plus_2l_small_k:
      require(is_orthogonal(p.family), "orthogonal family required");
      plus_block();
      d.subtype = SubType::plus;
      break;
    case WitnessId::o_plus_2l_half:
      require(is_orthogonal(p.family) && p.sign == Sign::minus, "o_plus_2l_half needs a minus-type ambient space");
      append_range(d.U, "e", 1, l);
      append_range(d.U, "f", 1, l);
      append_range(d.U1, "e", 1, l);
      append_range(d.U1, "f", 1, l - 1);
      d.U1.push_back(lab("e", l) + "-" + lab("f", l) + "+x");
      append_range(d.U2, "e", l + 1, 2 * l - 1);
      append_range(d.U2, "f", l + 1, 2 * l - 1);
      d.U2.push_back("e1-f1+x");
      d.U2.push_back("e1-alpha*f1+y");
      d.k = 2 * l;
      d.subtype = SubType::plus;
      break;
    case WitnessId::o_minus_2l_minus_ambient:
      require(is_orthogonal(p.family) && p.sign == Sign::minus, "needs a minus-type ambient space");
      for (auto* s : {&d.U, &d.U1}) {
        append_range(*s, "e", 1, l - 1);
        append_range(*s, "f", 1, l - 1);
        s->push_back(lab("f", l) + "+alpha*" + lab("e", l));
      }
      d.U.push_back(lab("f", l + 1) + "+x+" + lab("e", l));
      d.U1.push_back(lab("f", l + 1) + "+" + lab("e", l + 1) + "+" + lab("e", l));
      append_range(d.U2, "e", l + 1, 2 * l - 1);
      append_range(d.U2, "f", l + 1, 2 * l - 1);
      d.U2.push_back("y");
      d.U2.push_back("e1+x");
      d.k = 2 * l;
      d.subtype = SubType::minus;
      break;
    case WitnessId::o_minus_2l_plus_ambient:
      require(is_orthogonal(p.family) && p.sign != Sign::minus, "needs a plus-type or odd ambient space");
      for (auto* s : {&d.U, &d.U1}) {
        append_range(*s, "e", 1, l - 1);
        append_range(*s, "f", 1, l - 1);
        s->push_back(lab("f", l) + "+alpha*" + lab("e", l));
      }
      d.U.push_back(lab("f", l + 1) + "+" + lab("e", l + 1) + "+" + lab("e", l));
      d.U1.push_back(lab("f", l + 2) + "+" + lab("e", l + 2) + "+" + lab("e", l));
      append_range(d.U2, "e", l + 2, 2 * l);
      append_range(d.U2, "f", l + 2, 2 * l);
      d.U2.push_back("e1+alpha*f1+" + lab("f", l));
      d.U2.push_back("e2+f2+" + lab("f", l + 1) + "+f1");
      d.k = 2 * l;
      d.subtype = SubType::minus;
      break;
    case WitnessId::o_odd_k_minus:
      require(is_orthogonal(p.family) && p.sign == Sign::minus, "needs a minus-type ambient space");
      append_range(d.U, "e", 1, l);
      append_range(d.U, "f", 1, l);
      d.U.push_back("x");
      append_range(d.U1, "e", 1, l);
      append_range(d.U1, "f", 1, l);
      d.U1.push_back(lab("f", l + 1) + "+" + lab("e", l + 1));
      append_range(d.U2, "e", l + 1, 2 * l);
      append_range(d.U2, "f", l + 1, 2 * l);
      d.U2.push_back("y");
      d.k = 2 * l + 1;
      d.subtype = SubType::odd;
      R.notes.push_back("the display names its second space U; it is read as U'");
      break;
    case WitnessId::o_odd_k_plus:
      require(is_orthogonal(p.family) && p.sign != Sign::minus, "needs a plus-type or odd ambient space");
      append_range(d.U, "e", 1, l);
      append_range(d.U, "f", 1, l);
      d.U.push_back(lab("f", 2 * l + 1) + "+" + lab("e", 2 * l + 1) + "+" + lab("e", l + 1));
      append_range(d.U1, "e", 1, l);
      append_range(d.U1, "f", 1, l);
      d.U1.push_back(lab("f", l + 2) + "+" + lab("e", l + 2));
      append_range(d.U2, "e", l + 2, 2 * l + 1);
      append_range(d.U2, "f", l + 2, 2 * l + 1);
      d.U2.push_back("e1+f1+" + lab("f", l + 1));
      d.k = 2 * l + 1;
      d.subtype = SubType::odd;
      break;
    default: throw std::logic_error("triple_display: not a triple construction");
  }
  return d;
}

// First vertices with dim(U ∩ B) = k-1 and = 0, searched in orbit order.
json repair_triple(const ActionInstance& A, const WitnessParams& p, int k) {
  json j;
  Subspace U = A.subspace(0);
  std::optional<std::uint32_t> a, b;
  for (std::uint32_t v = 1; v < A.size() && (!a || !b); ++v) {
    int d = meet(U, A.subspace(v)).dim();
    if (!a && d == k - 1) a = v;
    if (!b && d == 0) b = v;
  }
  if (!a || !b) {
    j["found"] = false;
    return j;
  }
  j["found"] = true;
  j["U1"] = A.describe(*a);
  j["U2"] = A.describe(*b);
  if (A.size() <= p.pair_cap) {
    auto E = orbital_through(A, *a, p.pair_cap);
    j["distance"] = E.graph.dist[*b];
    j["claim_holds"] = E.graph.dist[*b] < 0 || E.graph.dist[*b] >= k;
  }
  return j;
}

Scalars orth_scalars(const ClassicalSpace& S) {
  Scalars sc;
  if (S.kind == FormKind::quadratic) sc["alpha"] = S.zeta ? *S.zeta : special_param(S.field(), SpecialParam::zeta);
  return sc;
}

WitnessReport run_triple(WitnessId id, const WitnessParams& p) {
  WitnessReport R;
  R.id = to_string(id);
  auto S = space_of(p);
  auto d = triple_display(id, p, R);
  Scalars sc = orth_scalars(S);
  std::map<std::string, Vec> extra;
  if (id == WitnessId::su_nd) {
    auto ob = orthonormal_basis(S);
    for (int i = 0; i < S.n(); ++i) extra[lab("o", i + 1)] = ob[i];
  }
  Span U = make_span(S, d.U, sc, extra), U1 = make_span(S, d.U1, sc, extra), U2 = make_span(S, d.U2, sc, extra);
  const int k = d.k;
  R.vectors["U"] = space_json(U.sub, U.exprs);
  R.vectors["U'"] = space_json(U1.sub, U1.exprs);
  R.vectors["U''"] = space_json(U2.sub, U2.exprs);
  if (sc.count("alpha")) R.vectors["alpha"] = sc["alpha"].value;
  R.params["k"] = k;

  R.display("spans_independent", U.independent && U1.independent && U2.independent,
            "dims " + std::to_string(U.sub.dim()) + "," + std::to_string(U1.sub.dim()) + "," + std::to_string(U2.sub.dim()));
  auto c0 = classify_subspace(S, U.sub), c1 = classify_subspace(S, U1.sub), c2 = classify_subspace(S, U2.sub);
  R.display("class_of_U", c0.tag == d.tag && (d.subtype == SubType::na || c0.subtype == d.subtype), c0.str());
  R.display("same_class", c0 == c1 && c0 == c2, c0.str() + " / " + c1.str() + " / " + c2.str());
  int m1 = meet(U.sub, U1.sub).dim(), m2 = meet(U.sub, U2.sub).dim();
  R.display("dim(U∩U')=k-1", m1 == k - 1, std::to_string(m1));
  R.display("dim(U∩U'')=0", m2 == 0, std::to_string(m2));
  if (U.sub.dim() != k) {
    R.check("distance_claim", false, "U is not a k-space; nothing to measure");
    return R;
  }

  auto A = try_action(p, U.sub, R);
  if (!A) return R;
  R.certificate["X"] = A->size();
  if (A->class_total) R.certificate["class_total"] = *A->class_total;
  // With U^perp in X, {U, U^perp} is a block and the action is not primitive.
  if (2 * k == S.n() && c0.tag == SubspaceTag::nondegenerate)
    R.certificate["perp_in_X"] = A->index_of(perp_radical(S, U.sub).perp).has_value();
  auto i1 = A->index_of(U1.sub), i2 = A->index_of(U2.sub);
  R.display("U'_in_orbit", i1.has_value());
  R.display("U''_in_orbit", i2.has_value());

  int best = 0;
  for (std::uint32_t v = 1; v < A->size(); ++v) best = std::max(best, meet(U.sub, A->subspace(v)).dim());
  R.certificate["max_intersection"] = best;

  bool literal = R.display_ok();
  if (!literal) {
    R.repaired = repair_triple(*A, p, k);
    if (R.repaired->contains("claim_holds"))
      R.check("distance_claim", (*R.repaired)["claim_holds"].get<bool>(),
              "repaired triple, d = " + (*R.repaired)["distance"].dump());
    else if (!(*R.repaired)["found"].get<bool>())
      R.check("distance_claim", false, "no vertex with the required intersections");
    return R;
  }
  R.check("U'_has_max_intersection", best == m1, "max dim(U∩B) = " + std::to_string(best));
  if (A->size() > p.pair_cap) {
    R.notes.push_back("|X| = " + std::to_string(A->size()) + " over pair cap; distance not measured");
    return R;
  }
  auto E = orbital_through(*A, *i1, p.pair_cap);
  int dist = E.graph.dist[*i2];
  int r = ceil_div(k - m2, k - m1);
  R.certificate["d(U,U'')"] = dist;
  R.certificate["orbital_diameter"] = E.graph.diameter;
  R.check("distance_claim", dist < 0 || dist >= r,
          "d(U,U'') = " + std::to_string(dist) + ", bound " + std::to_string(r));
  auto [ok, why] = seged_bound(*A, E.graph, k, k - m1);
  R.check("seged_bound_all_vertices", ok, why);
  return R;
}

// ------------------------------------------------------------ half-spin

WitnessReport run_halfspin(const WitnessParams& p) {
  require(p.family == Family::Omega && p.sign == Sign::plus && p.n % 2 == 0, "half-spin needs Omega plus type");
  WitnessReport R;
  R.id = "halfspin_WWW";
  auto S = space_of(p);
  const int k = p.n / 2;
  std::vector<std::string> w, w1, w2;
  append_range(w, "e", 1, k);
  if (k % 2 == 0) {
    append_range(w1, "f", 1, k);
  } else {
    w1.push_back("e1");
    append_range(w1, "f", 2, k);
  }
  append_range(w2, "e", 1, k - 2);
  append_range(w2, "f", k - 1, k);
  Span W = make_span(S, w, {}), W1 = make_span(S, w1, {}), W2 = make_span(S, w2, {});
  R.vectors["W"] = space_json(W.sub, w);
  R.vectors["W'"] = space_json(W1.sub, w1);
  R.vectors["W''"] = space_json(W2.sub, w2);
  int m1 = meet(W.sub, W1.sub).dim(), m2 = meet(W.sub, W2.sub).dim();
  R.display("dim(W∩W')", m1 == k % 2, std::to_string(m1));
  R.display("dim(W∩W'')=k-2", m2 == k - 2, std::to_string(m2));
  bool ts = true;
  for (auto* s : {&W, &W1, &W2}) ts = ts && classify_subspace(S, s->sub).tag == SubspaceTag::totally_singular;
  R.display("totally_singular", ts);
  R.display("parity", (k - m1) % 2 == 0 && (k - m2) % 2 == 0, "k - dim is even for W' and W''");
  auto A = try_action(p, W.sub, R);
  if (!A) return R;
  R.certificate["X"] = A->size();
  auto i1 = A->index_of(W1.sub), i2 = A->index_of(W2.sub);
  R.display("same_orbit", i1 && i2);
  if (!i1 || !i2 || A->size() > p.pair_cap) return R;
  auto E = orbital_through(*A, *i2, p.pair_cap);
  int dist = E.graph.dist[*i1];
  R.certificate["d(W,W')"] = dist;
  R.certificate["orbital_diameter"] = E.graph.diameter;
  R.check("distance_is_floor_k/2", dist == k / 2, std::to_string(dist));
  R.check("orbital_diameter_is_floor_k/2", E.graph.diameter == k / 2, std::to_string(E.graph.diameter));
  return R;
}

// ------------------------------------------------------------ diameter >= 3 obstructions

std::string line_class(const ClassicalSpace& S, const Vec& v) {
  const Field& F = S.field();
  switch (S.kind) {
    case FormKind::quadratic: {
      Elem q = eval_q(S, v);
      if (!q.value) return "singular";
      if (F.characteristic() == 2) return "nonsingular";
      return F.is_square(q) ? "square" : "nonsquare";
    }
    case FormKind::unitary: return eval_form(S, v, v).value ? "anisotropic" : "isotropic";
    default: return "isotropic";
  }
}

void neighbour_certificate_json(WitnessReport& R, const ActionInstance& A, const EdgeOrbital& E, std::uint32_t z,
                                const NeighbourCertificate& nc) {
  json j;
  j["neighbours_checked"] = nc.checked;
  j["adjacent_to_base"] = nc.adjacent_to_base;
  if (nc.common) j["common_neighbour"] = A.describe(*nc.common);
  j["holds"] = nc.holds();
  j["bfs_distance"] = E.graph.dist[z];
  R.certificate["neighbourhood"] = j;
}

WitnessReport run_nd2(const WitnessParams& p) {
  require(p.n >= 4, "nd2_diam3 needs n >= 4");
  require(p.family == Family::Sp || is_unitary(p.family) || is_orthogonal(p.family), "nd2_diam3 needs Sp, SU/GU or an orthogonal family");
  if (is_orthogonal(p.family)) require(!(p.n == 4 && p.sign == Sign::minus), "(n, eps) = (4, -) is excluded");
  WitnessReport R;
  R.id = "nd2_diam3";
  auto S = space_of(p);
  Span U = make_span(S, {"e1", "f1"}, {}), U1 = make_span(S, {"e1+e2", "f1"}, {}), U2 = make_span(S, {"e2", "f2"}, {});
  R.vectors["U"] = space_json(U.sub, U.exprs);
  R.vectors["U'"] = space_json(U1.sub, U1.exprs);
  R.vectors["U''"] = space_json(U2.sub, U2.exprs);
  auto c0 = classify_subspace(S, U.sub);
  R.display("U_nondegenerate", c0.tag == SubspaceTag::nondegenerate &&
                                   (!is_orthogonal(p.family) || c0.subtype == SubType::plus), c0.str());
  R.display("same_class", c0 == classify_subspace(S, U1.sub) && c0 == classify_subspace(S, U2.sub));
  Subspace m = meet(U.sub, U1.sub);
  R.display("U∩U'=<f1>", m == Subspace::span(S.V, {S.f(1)}));
  R.display("U∩U'_singular", line_class(S, S.f(1)) == "singular" || line_class(S, S.f(1)) == "isotropic");
  R.display("U∩U''=0", meet(U.sub, U2.sub).dim() == 0);
  R.display("U_perp_U''", eval_form(S, S.e(1), S.e(2)).value == 0 && eval_form(S, S.f(1), S.f(2)).value == 0 &&
                              eval_form(S, S.e(1), S.f(2)).value == 0 && eval_form(S, S.f(1), S.e(2)).value == 0);
  auto sc = span_certificate(S, U.sub, U1.sub, U2.sub);
  R.certificate["span"] = {{"candidates", sc.candidates}, {"survivors", sc.survivors}};
  R.check("span_certificate", sc.holds(), std::to_string(sc.survivors) + " of " + std::to_string(sc.candidates) + " spans survive");
  auto A = try_action(p, U.sub, R);
  if (!A) return R;
  R.certificate["X"] = A->size();
  auto i1 = A->index_of(U1.sub), i2 = A->index_of(U2.sub);
  R.display("same_orbit", i1 && i2);
  if (!i1 || !i2 || A->size() > p.pair_cap) return R;
  auto E = orbital_through(*A, *i1, p.pair_cap);
  auto nc = neighbour_certificate(*A, E, *i2);
  neighbour_certificate_json(R, *A, E, *i2, nc);
  int dist = E.graph.dist[*i2];
  R.check("neighbour_certificate", nc.holds());
  R.check("bfs_distance_at_least_3", dist < 0 || dist >= 3, std::to_string(dist));
  R.check("certificates_agree_with_bfs", nc.holds() == (dist < 0 || dist >= 3) && (!sc.holds() || nc.holds()));
  return R;
}

WitnessReport run_o2minus(const WitnessParams& p) {
  require(is_orthogonal(p.family), "o2minus_q1mod4 needs an orthogonal family");
  require(p.q % 2 == 1 && p.q % 4 == 1, "o2minus_q1mod4 needs q = 1 mod 4");
  require(p.n >= 7, "o2minus_q1mod4 needs n >= 7");
  WitnessReport R;
  R.id = "o2minus_q1mod4";
  auto S = space_of(p);
  const Field& F = S.field();
  bool x_variant = p.n == 7 || (p.n == 8 && p.sign == Sign::minus);
  std::string v = x_variant ? "x" : "e4+f4";
  Elem sigma = special_param(F, SpecialParam::sqrt_minus_one);
  R.vectors["sigma"] = sigma.value;
  json readings = json::array();
  std::optional<std::pair<Span, Span>> chosen;
  Span chosenU2;
  for (auto [name, z] : {std::pair<std::string, Elem>{"t^2+t+zeta irreducible", special_param(F, SpecialParam::zeta)},
                         std::pair<std::string, Elem>{"zeta=1 (x^2+x+1 irreducible)", F.one()}}) {
    Scalars sc{{"zeta", z}};
    Span U = make_span(S, {"e1+f1", "e1+zeta*e2+f2"}, sc), U1 = make_span(S, {"e1+f1", "e1+zeta*e3+f3"}, sc),
         U2 = make_span(S, {"zeta*e3+f3", "e3+" + v}, sc);
    auto c0 = classify_subspace(S, U.sub), c1 = classify_subspace(S, U1.sub), c2 = classify_subspace(S, U2.sub);
    bool minus = c0.subtype == SubType::minus && c1.subtype == SubType::minus && c2.subtype == SubType::minus;
    json r;
    r["reading"] = name;
    r["zeta"] = z.value;
    r["subtypes"] = {c0.str(), c1.str(), c2.str()};
    r["all_O2-"] = minus;
    readings.push_back(r);
    if (minus && !chosen) {
      chosen = std::pair{U, U1};
      chosenU2 = U2;
      R.vectors["U"] = space_json(U.sub, U.exprs);
      R.vectors["U'"] = space_json(U1.sub, U1.exprs);
      R.vectors["U''"] = space_json(U2.sub, U2.exprs);
      R.vectors["zeta"] = z.value;
      R.notes.push_back("zeta reading used: " + name);
    }
  }
  R.certificate["zeta_readings"] = readings;
  R.display("some_reading_gives_O2-", chosen.has_value());
  if (!chosen) return R;
  const Subspace& U = chosen->first.sub;
  const Subspace& U1 = chosen->second.sub;
  const Subspace& U2 = chosenU2.sub;
  Vec u0 = parse_vector(S, "e1+f1");
  R.display("Q(e1+f1)=1", eval_q(S, u0) == F.one());
  R.display("U∩U'=<e1+f1>", meet(U, U1) == Subspace::span(S.V, {u0}));
  R.display("U∩U''=0", meet(U, U2).dim() == 0);
  R.display("same_class", classify_subspace(S, U) == classify_subspace(S, U2));
  // The proof's step: Q(u) = Q(w) = 1 with u in U, w in U'' forces Q(u + sigma w) = 0.
  bool isotropic = true;
  for (const Vec& a : U.vectors())
    for (const Vec& b : U2.vectors())
      if (eval_q(S, a) == F.one() && eval_q(S, b) == F.one())
        isotropic = isotropic && eval_q(S, vec_add(F, a, vec_scale(F, sigma, b))).value == 0;
  R.check("u+sigma*w_singular", isotropic);
  auto sc = span_certificate(S, U, U1, U2);
  R.certificate["span"] = {{"candidates", sc.candidates}, {"survivors", sc.survivors}};
  R.check("span_certificate", sc.holds(), std::to_string(sc.survivors) + " of " + std::to_string(sc.candidates) + " spans survive");
  return R;
}

// ------------------------------------------------------------ common neighbours

std::optional<std::uint32_t> point_index(const ActionInstance& A, const ClassicalSpace& S, const Vec& v) {
  return A.index_of(Subspace::span(S.V, {v}));
}

void exact_common_neighbour(WitnessReport& R, const WitnessParams& p, const ClassicalSpace& S, const Vec& v,
                            const Vec& w, const Vec& u) {
  auto A = try_action(p, Subspace::span(S.V, {v}), R);
  if (!A) return;
  auto iw = point_index(*A, S, w), iu = point_index(*A, S, u);
  R.display("points_in_X", iw && iu);
  if (!iw || !iu) return;
  R.certificate["X"] = A->size();
  if (invariant_supported(*A)) {
    auto s1 = invariant_adjacency(*A, 0, *iu), s2 = invariant_adjacency(*A, *iw, *iu);
    R.certificate["signature_vu"] = *s1;
    R.certificate["signature_wu"] = *s2;
    R.check("invariant_same_orbital", s1 == s2);
  }
  if (A->size() > p.pair_cap) return;
  auto E = orbital_through(*A, *iu, p.pair_cap);
  R.check("u_adjacent_to_both", E.adjacent(A->orbit, 0, *iu) && E.adjacent(A->orbit, *iw, *iu));
  // The no-common-neighbour search of the obstruction cases must fail here.
  auto nc = neighbour_certificate(*A, E, *iw);
  R.certificate["certificate_search"] = {{"neighbours_checked", nc.checked},
                                         {"finds_common_neighbour", nc.common.has_value()}};
  R.check("certificate_search_finds_common_neighbour", nc.common.has_value() || nc.adjacent_to_base);
}

WitnessReport run_unitary_point(const WitnessParams& p) {
  require(is_unitary(p.family), "needs a unitary family");
  require(p.n >= 5, "needs n >= 5");
  WitnessReport R;
  R.id = "unitary_point_common_nbr";
  auto S = space_of(p);
  const Field& F = S.field();
  Elem lambda = p.lambda ? Elem{*p.lambda} : F.primitive();
  Elem mu = p.mu ? Elem{*p.mu} : F.one();
  require(lambda.value < F.order() && mu.value < F.order(), "scalar out of range");
  require(lambda != mu, "needs lambda != mu");
  Elem chi = special_param(F, SpecialParam::chi);
  Scalars sc{{"chi", chi}, {"lambda", lambda}, {"mu", mu}};
  std::string u_expr = p.n == 5 ? "x+lambda*f1+lambda*f2" : "f3+chi*e3+lambda*f1+lambda*f2";
  Vec v = parse_vector(S, "e1+chi*f1", sc), w = parse_vector(S, "mu*f1+e2+chi*f2", sc), u = parse_vector(S, u_expr, sc);
  R.params["lambda"] = lambda.value;
  R.params["mu"] = mu.value;
  R.vectors["chi"] = chi.value;
  R.vectors["v"] = {{"display", "e1+chi*f1"}, {"coords", coords(v)}};
  R.vectors["w"] = {{"display", "mu*f1+e2+chi*f2"}, {"coords", coords(w)}};
  R.vectors["u"] = {{"display", u_expr}, {"coords", coords(u)}};
  R.display("f(v,v)=1", eval_form(S, v, v) == F.one());
  R.display("f(w,w)=1", eval_form(S, w, w) == F.one());
  R.display("f(u,u)=1", eval_form(S, u, u) == F.one());
  R.display("f(v,w)=conj(mu)", eval_form(S, v, w) == conjugate(F, mu), elem_str(eval_form(S, v, w)));
  R.display("f(u,v)=lambda", eval_form(S, u, v) == lambda, elem_str(eval_form(S, u, v)));
  R.display("f(u,w)=lambda", eval_form(S, u, w) == lambda, elem_str(eval_form(S, u, w)));
  exact_common_neighbour(R, p, S, v, w, u);
  return R;
}

WitnessReport run_orth_point(const WitnessParams& p) {
  require(is_orthogonal(p.family), "needs an orthogonal family");
  require(p.q % 2 == 1, "needs q odd");
  require(p.n >= 5, "needs n >= 5");
  WitnessReport R;
  R.id = "orth_point_common_nbr";
  auto S = space_of(p);
  const Field& F = S.field();
  Elem lambda = p.lambda ? Elem{*p.lambda} : F.one();
  Elem alpha = p.mu ? Elem{*p.mu} : F.zero();
  require(lambda.value < F.order() && alpha.value < F.order(), "scalar out of range");
  Scalars sc{{"lambda", lambda}, {"alpha", alpha}};
  bool x_variant = p.n == 5 || (p.n == 6 && p.sign == Sign::minus);
  std::string u_expr = x_variant ? "lambda*f1+lambda*f2+x" : "lambda*f1+lambda*f2+e3+f3";
  Vec v = parse_vector(S, "e1+f1", sc), w = parse_vector(S, "alpha*f1+e2+f2", sc), u = parse_vector(S, u_expr, sc);
  R.params["lambda"] = lambda.value;
  R.params["alpha"] = alpha.value;
  R.vectors["v"] = {{"display", "e1+f1"}, {"coords", coords(v)}};
  R.vectors["w"] = {{"display", "alpha*f1+e2+f2"}, {"coords", coords(w)}};
  R.vectors["u"] = {{"display", u_expr}, {"coords", coords(u)}};
  R.notes.push_back("the common neighbour is named u; the display reuses the basis symbol x for it");
  R.display("Q(v)=1", eval_q(S, v) == F.one());
  R.display("Q(w)=1", eval_q(S, w) == F.one());
  R.display("Q(u)=1", eval_q(S, u) == F.one(), elem_str(eval_q(S, u)));
  R.display("f(v,w)=alpha", eval_form(S, v, w) == alpha);
  R.display("f(u,v)=lambda", eval_form(S, u, v) == lambda);
  R.display("f(u,w)=lambda", eval_form(S, u, w) == lambda);
  exact_common_neighbour(R, p, S, v, w, u);
  return R;
}

WitnessReport run_qeven_point(const WitnessParams& p) {
  require(is_orthogonal(p.family), "needs an orthogonal family");
  require(p.q % 2 == 0, "needs q even");
  require(p.n >= 8 && p.n % 2 == 0, "needs n >= 8 even");
  WitnessReport R;
  R.id = "qeven_point_common_nbr";
  auto S = space_of(p);
  const Field& F = S.field();
  Elem lambda = p.lambda ? Elem{*p.lambda} : F.zero();
  require(lambda.value < F.order(), "scalar out of range");
  R.params["lambda"] = lambda.value;
  std::vector<std::string> ex = lambda.value == 0
                                    ? std::vector<std::string>{"f2+e2+e1", "f2+e2+sigma*f1", "e2+f2"}
                                    : std::vector<std::string>{"e1+e2+e3+f3", "sigma_minus_lambda*f1+e3+f3+lambda*f2",
                                                               "e2+e3+f3+lambda*f1"};
  R.vectors["v0"] = ex[0];
  R.vectors["x0"] = ex[1];
  R.vectors["w0"] = ex[2];
  bool values = true;
  std::string bad;
  std::optional<ActionInstance> A;
  std::optional<EdgeOrbital> E;
  json per_sigma = json::array();
  for (std::uint32_t s = 0; s < F.order(); ++s) {
    Elem sigma{s};
    Scalars sc{{"sigma", sigma}, {"lambda", lambda}, {"sigma_minus_lambda", F.sub(sigma, lambda)}};
    Vec v0 = parse_vector(S, ex[0], sc), x0 = parse_vector(S, ex[1], sc), w0 = parse_vector(S, ex[2], sc);
    bool ok = eval_q(S, v0) == F.one() && eval_q(S, x0) == F.one() && eval_q(S, w0) == F.one() &&
              eval_q(S, vec_add(F, v0, x0)) == sigma && eval_q(S, vec_add(F, v0, w0)) == lambda &&
              eval_q(S, vec_add(F, w0, x0)) == lambda;
    if (!ok && bad.empty()) bad = "sigma = " + std::to_string(s);
    values = values && ok;
    if (!A) {
      A = try_action(p, Subspace::span(S.V, {v0}), R);
      if (!A) break;
      R.certificate["X"] = A->size();
    }
    auto iv = point_index(*A, S, v0), ix = point_index(*A, S, x0), iw = point_index(*A, S, w0);
    if (!iv || !ix || !iw) {
      R.display("points_in_X", false, "sigma = " + std::to_string(s));
      continue;
    }
    json r{{"sigma", s}};
    if (!E && A->size() <= p.pair_cap && A->size() > 1) E = orbital_through(*A, 1, p.pair_cap);
    auto same_orbital = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
      bool same = invariant_adjacency(*A, a, b) == invariant_adjacency(*A, c, d);
      if (E) same = same && pair_label(A->orbit, E->label, a, b) == pair_label(A->orbit, E->label, c, d);
      return same;
    };
    const std::string want = "alpha=" + std::to_string(lambda.value);
    bool ok_s;
    if (*ix == *iw) {
      // x0 = w0: x0 is itself a neighbour of v0
      r["x0=w0"] = true;
      ok_s = *invariant_adjacency(*A, *iv, *ix) == want;
    } else {
      r["signature_v0w0"] = *invariant_adjacency(*A, *iv, *iw);
      r["signature_x0w0"] = *invariant_adjacency(*A, *ix, *iw);
      ok_s = same_orbital(*iv, *iw, *ix, *iw) && *invariant_adjacency(*A, *iv, *iw) == want;
    }
    r["exact"] = E.has_value();
    r["common_neighbour"] = ok_s;
    R.check("common_neighbour_sigma_" + std::to_string(s), ok_s);
    per_sigma.push_back(r);
  }
  R.display("Q_values_as_displayed", values, bad);
  R.certificate["per_sigma"] = per_sigma;
  return R;
}

// ------------------------------------------------------------ case c

GroupElement perm_matrix(int n, const std::vector<int>& image) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, image[i]) = Elem{1};
  return {m, 0, false};
}

using PairSub = std::pair<Subspace, Subspace>;

bool same_pair(const PairSub& a, const PairSub& b) {
  return (a.first == b.first && a.second == b.second) || (a.first == b.second && a.second == b.first);
}

PairSub act(const PairSub& a, const GroupElement& g) { return {apply_element(a.first, g), apply_element(a.second, g)}; }

bool same_edge(const std::pair<PairSub, PairSub>& a, const std::pair<PairSub, PairSub>& b) {
  return (same_pair(a.first, b.first) && same_pair(a.second, b.second)) ||
         (same_pair(a.first, b.second) && same_pair(a.second, b.first));
}

std::optional<ActionInstance> case_c_action(const WitnessParams& p, WitnessReport& R) {
  ActionSpec s;
  s.action = ActionCase::c;
  s.family = Family::SL;
  s.n = p.n;
  s.q = p.q;
  s.t = p.t;
  s.budget = p.budget;
  try {
    return make_action(s);
  } catch (const BudgetExceeded& e) {
    R.notes.push_back(std::string("case c orbit not built: ") + e.what());
    return std::nullopt;
  }
}

// O_1 through {U, W1} p1 and the bound d(A, B) >= t - dim(A, B) on every vertex.
std::optional<EdgeOrbital> case_c_o1(const ActionInstance& A, const PairSub& image, const WitnessParams& p,
                                     WitnessReport& R) {
  auto idx = A.index_of(image.first, image.second);
  R.display("{U,W1}p1_in_X", idx.has_value());
  if (!idx || A.size() > p.pair_cap) return std::nullopt;
  auto E = orbital_through(A, *idx, p.pair_cap);
  R.certificate["X"] = A.size();
  R.certificate["O1_suborbit"] = E.graph.nbrs.size();
  R.certificate["O1_connected"] = E.graph.connected;
  R.certificate["O1_diameter"] = E.graph.diameter;
  auto base = A.pair(0);
  std::size_t unreachable = 0;
  bool ok = true;
  std::string bad;
  for (std::uint32_t v = 0; v < A.size(); ++v) {
    int d = E.graph.dist[v];
    if (d < 0) {
      ++unreachable;
      continue;
    }
    int need = p.t - pair_dim(base, A.pair(v));
    if (d < need) {
      ok = false;
      bad = A.describe(v);
    }
  }
  R.certificate["O1_unreachable"] = unreachable;
  R.check("pairofspaces_bound", ok, ok ? "checked " + std::to_string(A.size()) + " vertices" : "fails at " + bad);
  return E;
}

WitnessReport run_case_c(const WitnessParams& p) {
  const int n = p.n, t = p.t;
  require(n >= 2 && t >= 1 && 2 * t <= n, "case c needs 1 <= t <= n/2");
  WitnessReport R;
  R.id = "case_c_elements";
  R.params["t"] = t;
  Field F = Field::of_order(p.q);
  VectorSpaceSpec V(F, n);
  auto span_e = [&](int a, int b) {
    std::vector<Vec> rows;
    for (int i = a; i <= b; ++i) rows.push_back(unit_vec(n, i - 1));
    return Subspace::span(V, rows);
  };
  Subspace U = span_e(1, t), W1 = span_e(t + 1, n), W2 = span_e(1, n - t);
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  auto swap_perm = [&](int a, int b) {
    auto im = id;
    std::swap(im[a - 1], im[b - 1]);
    return perm_matrix(n, im);
  };
  GroupElement p1 = swap_perm(t, t + 1), p2 = swap_perm(t, n - t + 1);
  auto him = id;
  for (int j = 1; j <= t; ++j) std::swap(him[j - 1], him[n - j]);
  GroupElement h = perm_matrix(n, him);
  GroupElement sigma{Matrix::identity(n), 0, true};
  R.vectors["U"] = space_json(U);
  R.vectors["W1"] = space_json(W1);
  R.vectors["W2"] = space_json(W2);
  R.vectors["p1"] = "swap e" + std::to_string(t) + ", e" + std::to_string(t + 1);
  R.vectors["p2"] = "swap e" + std::to_string(t) + ", e" + std::to_string(n - t + 1);
  R.vectors["h"] = "swap e_j, e_{n+1-j} for j <= t";
  R.vectors["sigma"] = "inverse transpose (annihilator under the dot product)";

  R.display("V=U⊕W1", meet(U, W1).dim() == 0 && join(U, W1).dim() == n);
  R.display("U⊆W2", meet(U, W2) == U);
  R.display("Uσ=W1", apply_element(U, sigma) == W1);
  R.display("W1σ=U", apply_element(W1, sigma) == U);
  R.display("W2σ=<e_{n-t+1},...,e_n>", apply_element(W2, sigma) == span_e(n - t + 1, n));
  for (auto [name, pi] : {std::pair{"p1", p1}, std::pair{"p2", p2}}) {
    bool comm = compose(F, sigma, pi) == compose(F, pi, sigma);
    R.check(std::string("σ_centralizes_") + name, comm);
  }
  R.check("h_centralizes_p2", compose(F, h, p2) == compose(F, p2, h));
  PairSub A1{U, W1}, A2{U, W2};
  std::pair<PairSub, PairSub> E1{A1, act(A1, p1)}, E2{A2, act(A2, p2)};
  R.check("E1_fixed_by_σ", same_edge({act(E1.first, sigma), act(E1.second, sigma)}, E1));
  GroupElement sh = compose(F, sigma, h);
  R.check("{U,W2}σh={W2,U}", same_pair(act(A2, sh), PairSub{W2, U}));
  R.check("E2_fixed_by_σh", same_edge({act(E2.first, sh), act(E2.second, sh)}, E2));
  if (2 * t == n) R.notes.push_back("t = n/2: W2 = U, so E2 is degenerate");

  auto A = case_c_action(p, R);
  if (A) case_c_o1(*A, E1.second, p, R);
  return R;
}

WitnessReport run_zero_pair(const WitnessParams& p) {
  const int n = p.n, t = p.t;
  require(2 * t == n, "the zero pair needs V = U1 ⊕ W1 with dim U1 = dim W1 = t");
  WitnessReport R;
  R.id = "case_c_zero_pair";
  R.params["t"] = t;
  Field F = Field::of_order(p.q);
  VectorSpaceSpec V(F, n);
  auto beta = fixed_point_free_companion(F, t);
  if (!beta) throw HypothesisError("no fixed-point-free automorphism of GF(" + std::to_string(p.q) + ")^" + std::to_string(t));
  // alpha: e_i -> e_{t+i}; beta acts on W1 in the basis e_{t+1}, ..., e_n.
  auto build = [&](const Matrix& b) {
    std::vector<Vec> u2, w2;
    for (int i = 0; i < t; ++i) {
      Vec a = unit_vec(n, i), aa = unit_vec(n, t + i), ab(n);
      for (int j = 0; j < t; ++j) ab[t + j] = b.at(i, j);
      u2.push_back(vec_add(F, a, aa));
      w2.push_back(vec_add(F, a, ab));
    }
    return PairSub{Subspace::span(V, u2), Subspace::span(V, w2)};
  };
  std::vector<Vec> ur, wr;
  for (int i = 0; i < n; ++i) (i < t ? ur : wr).push_back(unit_vec(n, i));
  PairSub A{Subspace::span(V, ur), Subspace::span(V, wr)};
  PairSub B = build(*beta);
  json bj = json::array();
  for (int i = 0; i < t; ++i) bj.push_back(coords(beta->row_vec(i)));
  R.vectors["beta"] = bj;
  R.vectors["U2"] = space_json(B.first);
  R.vectors["W2"] = space_json(B.second);
  int d0 = pair_dim(A, B);
  R.display("dim(A,B)=0", d0 == 0, std::to_string(d0));
  R.display("V=U2⊕W2", meet(B.first, B.second).dim() == 0 && B.first.dim() == t && B.second.dim() == t);
  PairSub Bid = build(Matrix::identity(t));
  R.check("identity_beta_rejected", meet(Bid.first, Bid.second).dim() > 0, "beta = 1 gives U2 = W2");

  auto X = case_c_action(p, R);
  if (!X) return R;
  GroupElement p1 = perm_matrix(n, [&] {
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = i;
    std::swap(im[t - 1], im[t]);
    return im;
  }());
  auto E = case_c_o1(*X, act(A, p1), p, R);
  auto ib = X->index_of(B.first, B.second);
  R.display("B_in_X", ib.has_value());
  if (E && ib) {
    int d = E->graph.dist[*ib];
    R.certificate["d(A,B)"] = d;
    R.check("d(A,B)>=t", d < 0 || d >= t, d < 0 ? "unreachable in O1" : std::to_string(d));
  }
  return R;
}

// ------------------------------------------------------------ psl chain

WitnessReport run_psl_chain(const WitnessParams& p) {
  require(p.family == Family::SL, "psl_chain needs the linear family");
  const int k = p.l, n = p.n;
  require(k >= 1 && k < n, "psl_chain needs 1 <= k < n");
  WitnessReport R;
  R.id = "psl_chain";
  R.params["k"] = k;
  auto S = space_of(p);
  std::vector<std::string> a;
  append_range(a, "e", 1, k);
  Span A0 = make_span(S, a, {});
  R.vectors["A"] = space_json(A0.sub, a);
  if (2 * k <= n) {
    std::vector<std::string> b;
    append_range(b, "e", k + 1, 2 * k);
    Span B0 = make_span(S, b, {});
    auto chain = psl_chain(A0.sub, B0.sub);
    json cj = json::array();
    for (const auto& c : chain) cj.push_back(c.str());
    R.vectors["example_B"] = space_json(B0.sub, b);
    R.vectors["example_chain"] = cj;
    R.display("example_chain_length", static_cast<int>(chain.size()) - 1 == k, std::to_string(chain.size() - 1));
  }
  auto X = try_action(p, A0.sub, R);
  if (!X) return R;
  R.certificate["X"] = X->size();
  bool ok = true;
  std::string bad;
  for (std::uint32_t v = 0; v < X->size(); ++v) {
    Subspace B = X->subspace(v);
    int r = meet(A0.sub, B).dim();
    auto chain = psl_chain(A0.sub, B);
    bool good = static_cast<int>(chain.size()) - 1 == k - r && chain.front() == A0.sub && chain.back() == B;
    for (std::size_t i = 0; good && i + 1 < chain.size(); ++i)
      good = chain[i].dim() == k && meet(chain[i], chain[i + 1]).dim() == k - 1;
    if (!good && ok) bad = B.str();
    ok = ok && good;
  }
  R.check("chain_length_is_k-dim∩_for_every_B", ok, bad);
  if (X->size() <= p.pair_cap && X->size() > 1) {
    std::optional<std::uint32_t> y;
    for (std::uint32_t v = 1; v < X->size() && !y; ++v)
      if (meet(A0.sub, X->subspace(v)).dim() == k - 1) y = v;
    auto E = orbital_through(*X, *y, p.pair_cap);
    bool exact = true;
    for (std::uint32_t v = 0; v < X->size(); ++v)
      exact = exact && E.graph.dist[v] == k - meet(A0.sub, X->subspace(v)).dim();
    R.check("bfs_distance_equals_chain_length", exact);
  }
  return R;
}

}  // namespace

// ------------------------------------------------------------ public

std::string to_string(WitnessId id) {
  for (auto& [i, s] : id_names())
    if (i == id) return s;
  return "?";
}

WitnessId parse_witness(const std::string& s) {
  for (auto& [i, name] : id_names())
    if (s == name) return i;
  throw std::invalid_argument("unknown witness '" + s + "'");
}

const std::vector<WitnessId>& all_witness_ids() {
  static const std::vector<WitnessId> ids = [] {
    std::vector<WitnessId> v;
    for (auto& [i, s] : id_names()) v.push_back(i);
    return v;
  }();
  return ids;
}

Vec parse_vector(const ClassicalSpace& S, std::string_view expr, const Scalars& sc,
                 const std::map<std::string, Vec>& extra) {
  const Field& F = S.field();
  Vec v = S.zero_vec();
  std::size_t i = 0;
  auto skip = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  auto ident = [&] {
    std::size_t b = i;
    while (i < expr.size() && (std::isalnum(static_cast<unsigned char>(expr[i])) || expr[i] == '_')) ++i;
    if (b == i) throw std::invalid_argument("bad vector expression '" + std::string(expr) + "'");
    return std::string(expr.substr(b, i - b));
  };
  auto scalar = [&](const std::string& tok) {
    if (std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return F.from_int(std::stoll(tok));
    auto it = sc.find(tok);
    if (it == sc.end()) throw std::invalid_argument("unknown scalar '" + tok + "'");
    return it->second;
  };
  bool first = true;
  skip();
  if (i == expr.size()) throw std::invalid_argument("empty vector expression");
  while (i < expr.size()) {
    bool neg = false;
    if (expr[i] == '+' || expr[i] == '-') {
      neg = expr[i] == '-';
      ++i;
      skip();
    } else if (!first) {
      throw std::invalid_argument("expected + or - in '" + std::string(expr) + "'");
    }
    first = false;
    Elem c = F.one();
    std::string tok = ident();
    skip();
    if (i < expr.size() && expr[i] == '*') {
      ++i;
      skip();
      c = scalar(tok);
      tok = ident();
      skip();
    }
    auto it = extra.find(tok);
    Vec b = it != extra.end() ? it->second : S.basis_vector(tok);
    if (neg) c = F.neg(c);
    v = vec_add(F, v, vec_scale(F, c, b));
  }
  return v;
}

std::vector<Vec> orthonormal_basis(const ClassicalSpace& S) {
  if (S.kind != FormKind::unitary) throw std::invalid_argument("orthonormal_basis: unitary spaces only");
  const Field& F = S.field();
  auto all = Subspace::whole(S.V).vectors();
  std::vector<Vec> out;
  while (static_cast<int>(out.size()) < S.n()) {
    bool found = false;
    for (const Vec& v : all) {
      if (eval_form(S, v, v) != F.one()) continue;
      if (std::any_of(out.begin(), out.end(), [&](const Vec& b) { return eval_form(S, v, b).value != 0; })) continue;
      out.push_back(v);
      found = true;
      break;
    }
    if (!found) throw std::logic_error("orthonormal_basis: greedy search stalled");
  }
  return out;
}

std::vector<Subspace> psl_chain(const Subspace& A, const Subspace& B) {
  if (A.dim() != B.dim()) throw std::invalid_argument("psl_chain: dimensions differ");
  const Field& F = A.field();
  Subspace M = meet(A, B);
  auto common = M.rows();
  auto extend = [&](const Subspace& X) {
    std::vector<Vec> rows = common, tail;
    for (const Vec& r : X.rows()) {
      rows.push_back(r);
      if (rank(F, Matrix::from_rows(rows, X.n())) == static_cast<int>(rows.size()))
        tail.push_back(r);
      else
        rows.pop_back();
    }
    return tail;
  };
  auto ta = extend(A), tb = extend(B);
  const int s = static_cast<int>(ta.size());
  std::vector<Subspace> chain;
  for (int i = 0; i <= s; ++i) {
    std::vector<Vec> rows = common;
    for (int j = 0; j < s - i; ++j) rows.push_back(ta[j]);
    for (int j = s - i; j < s; ++j) rows.push_back(tb[j]);
    chain.push_back(Subspace::span(A.ambient(), rows));
  }
  return chain;
}

std::optional<Matrix> fixed_point_free_companion(const Field& F, int t) {
  if (t < 1) throw std::invalid_argument("fixed_point_free_companion: t >= 1");
  const std::uint32_t q = F.order();
  std::vector<std::uint32_t> c(t, 0);  // c[0] + c[1] x + ... + x^t
  std::uint64_t total = 1;
  for (int i = 0; i < t; ++i) total *= q;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (int i = t - 1; i >= 0; --i) {
      c[i] = static_cast<std::uint32_t>(r % q);
      r /= q;
    }
    if (c[0] == 0) continue;
    Elem at1 = F.one();
    for (int i = 0; i < t; ++i) at1 = F.add(at1, Elem{c[i]});
    if (at1.value == 0) continue;
    Matrix m(t, t);
    for (int i = 0; i + 1 < t; ++i) m.at(i, i + 1) = F.one();
    for (int j = 0; j < t; ++j) m.at(t - 1, j) = F.neg(Elem{c[j]});
    return m;
  }
  return std::nullopt;
}

SpanCertificate span_certificate(const ClassicalSpace& S, const Subspace& U, const Subspace& U1, const Subspace& U2) {
  if (U.dim() != 2 || U2.dim() != 2 || meet(U, U2).dim() != 0)
    throw std::invalid_argument("span_certificate: needs 2-spaces U, U'' with U ∩ U'' = 0");
  Subspace m = meet(U, U1);
  if (m.dim() != 1) throw std::invalid_argument("span_certificate: needs dim(U ∩ U') = 1");
  const std::string want_line = line_class(S, m.rows().front());
  const SubspaceClass want = classify_subspace(S, U);
  SpanCertificate c;
  for (const Vec& u : U.points())
    for (const Vec& w : U2.points()) {
      ++c.candidates;
      if (line_class(S, u) != want_line || line_class(S, w) != want_line) continue;
      Subspace W = Subspace::span(S.V, {u, w});
      if (classify_subspace(S, W) != want) continue;
      if (!c.example) c.example = W;
      ++c.survivors;
    }
  return c;
}

NeighbourCertificate neighbour_certificate(const ActionInstance& A, const EdgeOrbital& E, std::uint32_t z) {
  NeighbourCertificate c;
  c.adjacent_to_base = E.adjacent(A.orbit, 0, z);
  for (std::uint32_t w : E.graph.nbrs) {
    ++c.checked;
    if (E.adjacent(A.orbit, w, z)) {
      c.common = w;
      break;
    }
  }
  return c;
}

void WitnessReport::check(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail), false});
}

void WitnessReport::display(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail), true});
}

bool WitnessReport::pass() const {
  bool any = false;
  for (const auto& c : checks)
    if (!c.display) {
      any = true;
      if (!c.pass) return false;
    }
  return any;
}

bool WitnessReport::display_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return !c.display || c.pass; });
}

const PropertyCheck* WitnessReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json WitnessReport::to_json() const {
  json j;
  j["case"] = id;
  j["params"] = params;
  j["vectors"] = vectors;
  json cs = json::array();
  for (const auto& c : checks) {
    json e{{"name", c.name}, {"kind", c.display ? "display" : "claim"}, {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(e);
  }
  j["checks"] = cs;
  j["certificate"] = certificate;
  if (repaired) j["repaired"] = *repaired;
  if (!notes.empty()) j["notes"] = notes;
  j["display_ok"] = display_ok();
  j["pass"] = pass();
  return j;
}

WitnessReport run_witness(WitnessId id, const WitnessParams& p) {
  WitnessReport R;
  switch (id) {
    case WitnessId::psl_chain: R = run_psl_chain(p); break;
    case WitnessId::halfspin_WWW: R = run_halfspin(p); break;
    case WitnessId::nd2_diam3: R = run_nd2(p); break;
    case WitnessId::o2minus_q1mod4: R = run_o2minus(p); break;
    case WitnessId::unitary_point_common_nbr: R = run_unitary_point(p); break;
    case WitnessId::orth_point_common_nbr: R = run_orth_point(p); break;
    case WitnessId::qeven_point_common_nbr: R = run_qeven_point(p); break;
    case WitnessId::case_c_elements: R = run_case_c(p); break;
    case WitnessId::case_c_zero_pair: R = run_zero_pair(p); break;
    default: R = run_triple(id, p); break;
  }
  json base{{"family", to_string(p.family)}, {"n", p.n}, {"q", p.q}, {"epsilon", to_string(p.sign)}, {"l", p.l}};
  for (auto& [k, v] : R.params.items()) base[k] = v;
  R.params = base;
  return R;
}

std::vector<WitnessInstance> standard_witness_instances() {
  auto mk = [](WitnessId id, Family f, int n, std::uint32_t q, Sign s, int l, int t = 1) {
    WitnessParams p;
    p.family = f;
    p.n = n;
    p.q = q;
    p.sign = s;
    p.l = l;
    p.t = t;
    return WitnessInstance{id, p};
  };
  using W = WitnessId;
  using F = Family;
  return {
      mk(W::psl_chain, F::SL, 5, 2, Sign::none, 2),
      mk(W::sp_ts, F::Sp, 6, 2, Sign::none, 2),
      mk(W::sp_ts, F::Sp, 8, 2, Sign::none, 3),
      mk(W::sp_ts, F::Sp, 6, 3, Sign::none, 2),
      mk(W::sp_nd, F::Sp, 4, 2, Sign::none, 1),
      mk(W::sp_nd, F::Sp, 6, 3, Sign::none, 1),
      mk(W::su_nd, F::SU, 4, 2, Sign::none, 2),
      mk(W::su_nd, F::SU, 5, 2, Sign::none, 2),
      mk(W::su_ts, F::SU, 4, 2, Sign::none, 2),
      mk(W::su_ts, F::SU, 6, 2, Sign::none, 3),
      mk(W::o_plus_2l_small_k, F::Omega, 6, 2, Sign::plus, 1),
      mk(W::o_plus_2l_small_k, F::Omega, 7, 3, Sign::odd, 1),
      mk(W::o_plus_2l_half, F::Omega, 6, 2, Sign::minus, 1),
      mk(W::o_plus_2l_half, F::Omega, 6, 3, Sign::minus, 1),
      mk(W::o_minus_2l_minus_ambient, F::Omega, 6, 2, Sign::minus, 1),
      mk(W::o_minus_2l_minus_ambient, F::Omega, 8, 2, Sign::minus, 1),
      mk(W::o_minus_2l_plus_ambient, F::Omega, 6, 2, Sign::plus, 1),
      mk(W::o_minus_2l_plus_ambient, F::Omega, 8, 2, Sign::plus, 1),
      mk(W::o_odd_k_minus, F::Omega, 6, 3, Sign::minus, 1),
      mk(W::o_odd_k_plus, F::Omega, 6, 3, Sign::plus, 1),
      mk(W::o_odd_k_plus, F::Omega, 7, 3, Sign::odd, 1),
      mk(W::o_ts, F::Omega, 7, 3, Sign::odd, 2),
      mk(W::o_ts, F::Omega, 8, 2, Sign::minus, 3),
      mk(W::halfspin_WWW, F::Omega, 8, 2, Sign::plus, 4),
      mk(W::nd2_diam3, F::Sp, 6, 2, Sign::none, 1),
      mk(W::nd2_diam3, F::SU, 4, 2, Sign::none, 1),
      mk(W::nd2_diam3, F::Omega, 6, 2, Sign::plus, 1),
      mk(W::o2minus_q1mod4, F::Omega, 7, 5, Sign::odd, 1),
      mk(W::unitary_point_common_nbr, F::SU, 5, 2, Sign::none, 1),
      mk(W::unitary_point_common_nbr, F::SU, 6, 2, Sign::none, 1),
      mk(W::orth_point_common_nbr, F::Omega, 7, 3, Sign::odd, 1),
      mk(W::orth_point_common_nbr, F::Omega, 5, 3, Sign::odd, 1),
      mk(W::qeven_point_common_nbr, F::Omega, 8, 2, Sign::plus, 1),
      mk(W::case_c_elements, F::SL, 4, 2, Sign::none, 1, 1),
      mk(W::case_c_elements, F::SL, 4, 2, Sign::none, 1, 2),
      mk(W::case_c_elements, F::SL, 4, 3, Sign::none, 1, 1),
      mk(W::case_c_elements, F::SL, 4, 3, Sign::none, 1, 2),
      mk(W::case_c_zero_pair, F::SL, 4, 2, Sign::none, 1, 2),
      mk(W::case_c_zero_pair, F::SL, 4, 3, Sign::none, 1, 2),
  };
}

}  // namespace orbdiam
