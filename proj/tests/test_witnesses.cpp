#include "doctest.h"
#include "orbdiam/oracle.hpp"
#include "orbdiam/witnesses.hpp"

#include <deque>

using namespace orbdiam;

namespace {

WitnessParams params(Family f, int n, std::uint32_t q, Sign s, int l, int t = 1) {
  WitnessParams p;
  p.family = f;
  p.n = n;
  p.q = q;
  p.sign = s;
  p.l = l;
  p.t = t;
  return p;
}

// Distance from U to U'' in the orbital graph of {U, U'}, from the brute-force labels.
int brute_distance(const BruteOrbitals& B, const Subspace& U, const Subspace& U1, const Subspace& U2) {
  auto idx = [&](const Subspace& A) {
    for (std::size_t i = 0; i < B.points.size(); ++i)
      if (B.points[i] == A) return static_cast<int>(i);
    return -1;
  };
  int a = idx(U), b = idx(U1), c = idx(U2);
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  REQUIRE(c >= 0);
  int lab = B.label[a][b];
  std::vector<int> dist(B.points.size(), -1);
  std::deque<int> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t y = 0; y < B.points.size(); ++y)
      if (dist[y] < 0 && B.label[x][y] == lab) {
        dist[y] = dist[x] + 1;
        queue.push_back(static_cast<int>(y));
      }
  }
  return dist[c];
}

Subspace basis_of(const ClassicalSpace& S, const nlohmann::ordered_json& j) {
  std::vector<Vec> rows;
  for (const auto& r : j["basis"]) {
    Vec v;
    for (const auto& x : r) v.push_back(Elem{x.get<std::uint32_t>()});
    rows.push_back(v);
  }
  return Subspace::span(S.V, rows);
}

}  // namespace

TEST_CASE("vector expressions") {
  auto S = natural_space(Family::Omega, 6, Field::of_order(3), Sign::minus);
  Scalars sc{{"zeta", Elem{2}}};
  Vec v = parse_vector(S, "e1+zeta*e2-f2+2*y", sc);
  CHECK(v == Vec{Elem{1}, Elem{2}, Elem{0}, Elem{2}, Elem{0}, Elem{2}});
  CHECK(parse_vector(S, " -x ") == vec_scale(S.field(), Elem{2}, S.x()));
  CHECK_THROWS_AS(parse_vector(S, "e9"), std::out_of_range);
  CHECK_THROWS_AS(parse_vector(S, "e1 e2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector(S, "mu*e1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector(S, ""), std::invalid_argument);
}

TEST_CASE("orthonormal basis of a unitary space") {
  auto S = natural_space(Family::SU, 5, Field::of_order(4), Sign::none);
  auto ob = orthonormal_basis(S);
  REQUIRE(ob.size() == 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(eval_form(S, ob[i], ob[j]) == Elem{i == j ? 1u : 0u});
}

TEST_CASE("chains of k-spaces") {
  Field F = Field::of_order(3);
  VectorSpaceSpec V(F, 6);
  auto sp = [&](std::vector<int> idx) {
    std::vector<Vec> rows;
    for (int i : idx) rows.push_back(unit_vec(6, i));
    return Subspace::span(V, rows);
  };
  Subspace A = sp({0, 1, 2}), B = sp({2, 3, 4});
  auto c = psl_chain(A, B);
  REQUIRE(c.size() == 3);
  CHECK(c.front() == A);
  CHECK(c.back() == B);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(meet(c[i], c[i + 1]).dim() == 2);
  CHECK(psl_chain(A, A).size() == 1);
  CHECK_THROWS_AS(psl_chain(A, sp({0})), std::invalid_argument);
}

TEST_CASE("fixed-point-free companion matrices") {
  CHECK_FALSE(fixed_point_free_companion(Field::of_order(2), 1).has_value());
  for (auto [q, t] : {std::pair{2u, 2}, std::pair{3u, 1}, std::pair{3u, 2}, std::pair{2u, 3}}) {
    Field F = Field::of_order(q);
    auto b = fixed_point_free_companion(F, t);
    REQUIRE(b.has_value());
    CHECK(determinant(F, *b).value != 0);
    std::uint32_t total = 1;
    for (int i = 0; i < t; ++i) total *= q;
    for (std::uint32_t code = 1; code < total; ++code) {
      Vec v(t);
      for (std::uint32_t c = code, i = 0; i < static_cast<std::uint32_t>(t); ++i, c /= q) v[i] = Elem{c % q};
      CHECK(vec_mul(F, v, *b) != v);
    }
  }
}

TEST_CASE("triple displays agree with a brute-force oracle") {
  struct C {
    WitnessId id;
    WitnessParams p;
    int d;
  };
  for (C c : {C{WitnessId::sp_nd, params(Family::Sp, 4, 2, Sign::none, 1), 3},
              C{WitnessId::su_ts, params(Family::SU, 4, 2, Sign::none, 2), 2},
              C{WitnessId::sp_ts, params(Family::Sp, 4, 3, Sign::none, 2), 2}}) {
    CAPTURE(to_string(c.id));
    auto R = run_witness(c.id, c.p);
    CHECK(R.display_ok());
    CHECK(R.pass());
    CHECK(R.certificate["d(U,U'')"] == c.d);
    auto S = natural_space(c.p.family, c.p.n, Field::of_order(c.p.family == Family::SU ? c.p.q * c.p.q : c.p.q), c.p.sign);
    auto G = oracle_group(c.p.family, S);
    Subspace U = basis_of(S, R.vectors["U"]), U1 = basis_of(S, R.vectors["U'"]), U2 = basis_of(S, R.vectors["U''"]);
    auto B = brute_orbitals(G, U);
    CHECK(brute_distance(B, U, U1, U2) == c.d);
  }
}

TEST_CASE("triple displays at desk scale") {
  struct C {
    WitnessId id;
    WitnessParams p;
    int d;
  };
  for (C c : {C{WitnessId::sp_ts, params(Family::Sp, 6, 2, Sign::none, 2), 2},
              C{WitnessId::su_nd, params(Family::SU, 4, 2, Sign::none, 2), 2},
              C{WitnessId::su_ts, params(Family::SU, 6, 2, Sign::none, 3), 3},
              C{WitnessId::o_plus_2l_small_k, params(Family::Omega, 6, 2, Sign::plus, 1), 3},
              C{WitnessId::o_plus_2l_half, params(Family::Omega, 6, 2, Sign::minus, 1), 2},
              C{WitnessId::o_minus_2l_minus_ambient, params(Family::Omega, 6, 2, Sign::minus, 1), 2},
              C{WitnessId::o_ts, params(Family::Omega, 8, 2, Sign::minus, 3), 3}}) {
    CAPTURE(to_string(c.id));
    auto R = run_witness(c.id, c.p);
    CHECK(R.display_ok());
    CHECK(R.pass());
    CHECK(R.certificate["d(U,U'')"] == c.d);
    CHECK(R.find("seged_bound_all_vertices")->pass);
  }
}

TEST_CASE("defective display is reported and repaired") {
  auto R = run_witness(WitnessId::o_minus_2l_plus_ambient, params(Family::Omega, 6, 2, Sign::plus, 1));
  CHECK_FALSE(R.display_ok());
  CHECK_FALSE(R.find("same_class")->pass);
  REQUIRE(R.repaired.has_value());
  CHECK((*R.repaired)["found"] == true);
  CHECK((*R.repaired)["distance"] == 3);
  CHECK(R.pass());
}

TEST_CASE("half-spin triple") {
  auto R = run_witness(WitnessId::halfspin_WWW, params(Family::Omega, 8, 2, Sign::plus, 4));
  CHECK(R.display_ok());
  CHECK(R.pass());
  CHECK(R.certificate["d(W,W')"] == 2);
}

TEST_CASE("diameter 3 obstructions for nondegenerate 2-spaces") {
  for (auto p : {params(Family::Sp, 6, 2, Sign::none, 1), params(Family::SU, 4, 2, Sign::none, 1),
                 params(Family::Omega, 6, 2, Sign::plus, 1), params(Family::GO, 6, 2, Sign::plus, 1)}) {
    CAPTURE(to_string(p.family));
    auto R = run_witness(WitnessId::nd2_diam3, p);
    CHECK(R.display_ok());
    CHECK(R.pass());
    CHECK(R.find("span_certificate")->pass);
    CHECK(R.certificate["neighbourhood"]["bfs_distance"] == 3);
  }
  CHECK_THROWS_AS(run_witness(WitnessId::nd2_diam3, params(Family::Omega, 4, 3, Sign::minus, 1)), HypothesisError);
  CHECK_THROWS_AS(run_witness(WitnessId::nd2_diam3, params(Family::SL, 4, 2, Sign::none, 1)), HypothesisError);
}

TEST_CASE("O2- spaces for q = 1 mod 4") {
  auto R = run_witness(WitnessId::o2minus_q1mod4, params(Family::Omega, 7, 5, Sign::odd, 1));
  CHECK(R.display_ok());
  CHECK(R.pass());
  CHECK(R.certificate["span"]["survivors"] == 0);
  CHECK_THROWS_AS(run_witness(WitnessId::o2minus_q1mod4, params(Family::Omega, 7, 3, Sign::odd, 1)), HypothesisError);
}

TEST_CASE("common neighbours of points") {
  auto U = run_witness(WitnessId::unitary_point_common_nbr, params(Family::SU, 5, 2, Sign::none, 1));
  CHECK(U.display_ok());
  CHECK(U.pass());
  auto O = run_witness(WitnessId::orth_point_common_nbr, params(Family::Omega, 5, 3, Sign::odd, 1));
  CHECK(O.display_ok());
  CHECK(O.pass());
  for (std::uint32_t lambda : {0u, 1u}) {
    auto p = params(Family::Omega, 8, 2, Sign::plus, 1);
    p.lambda = lambda;
    auto E = run_witness(WitnessId::qeven_point_common_nbr, p);
    CHECK(E.display_ok());
    CHECK(E.pass());
  }
  auto bad = params(Family::SU, 5, 2, Sign::none, 1);
  bad.lambda = 1;
  CHECK_THROWS_AS(run_witness(WitnessId::unitary_point_common_nbr, bad), HypothesisError);
}

TEST_CASE("case c group elements and the zero pair") {
  for (int t : {1, 2}) {
    auto R = run_witness(WitnessId::case_c_elements, params(Family::SL, 4, 2, Sign::none, 1, t));
    CAPTURE(t);
    CHECK(R.display_ok());
    CHECK(R.pass());
  }
  auto Z = run_witness(WitnessId::case_c_zero_pair, params(Family::SL, 4, 2, Sign::none, 1, 2));
  CHECK(Z.display_ok());
  CHECK(Z.pass());
  CHECK(Z.certificate["d(A,B)"] == 3);
  CHECK_THROWS_AS(run_witness(WitnessId::case_c_zero_pair, params(Family::SL, 2, 2, Sign::none, 1, 1)), HypothesisError);
}

TEST_CASE("psl chain on every 2-space of V5(2)") {
  auto R = run_witness(WitnessId::psl_chain, params(Family::SL, 5, 2, Sign::none, 2));
  CHECK(R.pass());
  CHECK(R.find("bfs_distance_equals_chain_length")->pass);
}

TEST_CASE("witness names round trip") {
  for (WitnessId id : all_witness_ids()) CHECK(parse_witness(to_string(id)) == id);
  CHECK_THROWS_AS(parse_witness("nope"), std::invalid_argument);
}
