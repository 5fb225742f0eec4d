#include "doctest.h"
#include "orbdiam/group.hpp"
#include "orbdiam/oracle.hpp"
#include "orbdiam/orbit.hpp"

using namespace orbdiam;

namespace {

struct Tiny {
  Family fam;
  int n;
  std::uint32_t q;  // q0 for unitary families
  Sign sign;
};

ClassicalSpace space_of(const Tiny& t) {
  bool unitary = t.fam == Family::SU || t.fam == Family::GU;
  return natural_space(t.fam, t.n, Field::of_order(unitary ? std::uint64_t{t.q} * t.q : t.q), t.sign);
}

}  // namespace

TEST_CASE("oracle group orders match the order formulas and the catalogued generators") {
  for (Tiny t : {Tiny{Family::SL, 2, 3, Sign::none}, Tiny{Family::SL, 4, 2, Sign::none}, Tiny{Family::SL, 3, 3, Sign::none},
                 Tiny{Family::Sp, 4, 2, Sign::none}, Tiny{Family::Sp, 4, 3, Sign::none}, Tiny{Family::SU, 3, 2, Sign::none},
                 Tiny{Family::GU, 3, 2, Sign::none}, Tiny{Family::SU, 2, 3, Sign::none}, Tiny{Family::SU, 4, 2, Sign::none},
                 Tiny{Family::GO, 3, 3, Sign::odd}, Tiny{Family::Omega, 3, 3, Sign::odd},
                 Tiny{Family::Omega, 3, 5, Sign::odd}, Tiny{Family::GO, 4, 2, Sign::plus},
                 Tiny{Family::Omega, 4, 2, Sign::minus}, Tiny{Family::Omega, 4, 3, Sign::plus},
                 Tiny{Family::Omega, 4, 3, Sign::minus}, Tiny{Family::GO, 4, 3, Sign::minus},
                 Tiny{Family::Omega, 6, 2, Sign::plus}}) {
    CAPTURE(to_string(t.fam));
    CAPTURE(t.n);
    CAPTURE(t.q);
    CAPTURE(to_string(t.sign));
    auto S = space_of(t);
    auto oracle = oracle_group(t.fam, S);
    auto expected = expected_order(t.fam, t.n, t.q, t.sign);
    CHECK(to_string_u128(oracle.size()) == to_string_u128(expected));
    auto gs = generator_catalog(t.fam, S);
    auto closure = group_closure(S.field(), gs.gens);
    CHECK(closure.size() == oracle.size());
  }
}

TEST_CASE("brute orbitals agree with pair BFS on Sp4(2) points") {
  auto S = natural_space(Family::Sp, 4, Field::of_order(2), Sign::none);
  auto G = oracle_group(Family::Sp, S);
  auto base = Subspace::span(S.V, {S.e(1)});
  auto brute = brute_orbitals(G, base);
  CHECK(brute.points.size() == 15);
  REQUIRE(brute.edges.size() == 2);
  auto gs = generator_catalog(Family::Sp, S);
  SubspaceModel model(S.V, 1, gs.gens);
  auto orb = orbit_bfs(model, model.encode(base));
  auto po = pair_orbitals(orb);
  auto e1 = brute.edges, e2 = po.edges;
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  CHECK(e1 == e2);
  // perpendicular pairs: 15 * 6 / 2 = 45; non-perpendicular: 15 * 8 / 2 = 60
  CHECK(e1 == std::vector<std::uint64_t>{45, 60});
  CHECK(brute.diameters == std::vector<int>{2, 2});
}
