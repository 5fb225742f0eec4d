#include <random>

#include "doctest.h"
#include "orbdiam/group.hpp"
#include "orbdiam/orbit.hpp"

using namespace orbdiam;

namespace {

GroupElement random_word(const GeneratorSet& gs, std::mt19937& rng, int len) {
  const Field& F = gs.space.field();
  GroupElement g = GroupElement::identity(gs.space.n());
  for (int i = 0; i < len; ++i) g = compose(F, g, gs.gens[rng() % gs.gens.size()]);
  return g;
}

Subspace span_labels(const ClassicalSpace& S, std::initializer_list<const char*> labels) {
  std::vector<Vec> rows;
  for (auto l : labels) rows.push_back(S.basis_vector(l));
  return Subspace::span(S.V, rows);
}

std::size_t orbit_size(const GeneratorSet& gs, const Subspace& base) {
  SubspaceModel model(gs.space.V, base.dim(), gs.gens);
  return orbit_bfs(model, model.encode(base)).size();
}

}  // namespace

TEST_CASE("catalogued generators preserve their forms") {
  struct C {
    Family fam;
    int n;
    std::uint32_t q;
    Sign sign;
  };
  for (C c : {C{Family::SL, 4, 4, Sign::none}, C{Family::Sp, 6, 3, Sign::none}, C{Family::Sp, 4, 4, Sign::none},
              C{Family::SU, 3, 2, Sign::none}, C{Family::SU, 4, 3, Sign::none}, C{Family::GU, 5, 2, Sign::none},
              C{Family::Omega, 7, 3, Sign::odd}, C{Family::Omega, 8, 2, Sign::plus}, C{Family::Omega, 6, 3, Sign::minus},
              C{Family::GO, 6, 2, Sign::minus}, C{Family::GO, 5, 5, Sign::odd}, C{Family::Omega, 8, 4, Sign::minus}}) {
    CAPTURE(to_string(c.fam));
    CAPTURE(c.n);
    CAPTURE(c.q);
    std::uint64_t fq = (c.fam == Family::SU || c.fam == Family::GU) ? std::uint64_t{c.q} * c.q : c.q;
    auto S = natural_space(c.fam, c.n, Field::of_order(fq), c.sign);
    auto gs = generator_catalog(c.fam, S);
    CHECK(!gs.gens.empty());
    CHECK(gs.gens.size() == gs.names.size());
  }
  CHECK_THROWS_AS(generator_catalog(Family::Sp, make_space(FormKind::linear, 4, Field::of_order(2))), std::invalid_argument);
}

TEST_CASE("right action is compatible with composition, Frobenius and flip") {
  std::mt19937 rng(7);
  Field F = Field::of_order(4);
  auto S = natural_space(Family::SL, 4, F, Sign::none);
  auto gs = generator_catalog(Family::SL, S, {true, true});
  auto subs = enumerate_subspaces(S.V, 2);
  for (int t = 0; t < 200; ++t) {
    auto g = random_word(gs, rng, 5), h = random_word(gs, rng, 5);
    const Subspace& A = subs[rng() % subs.size()];
    REQUIRE(apply_element(apply_element(A, g), h) == apply_element(A, compose(F, g, h)));
    REQUIRE(apply_element(apply_element(A, g), inverse(F, g)) == A);
    SubspaceModel model(S.V, 2, {});
    std::vector<std::uint64_t> out(model.width());
    model.apply_element(model.encode(A).data(), g, out.data());
    REQUIRE(out == model.encode(apply_element(A, g)));
  }
  auto SU = natural_space(Family::SU, 4, Field::of_order(9), Sign::none);
  auto gu = generator_catalog(Family::SU, SU, {true, false});
  for (int t = 0; t < 50; ++t) {
    auto g = random_word(gu, rng, 6);
    REQUIRE(preserves_form(SU, Family::GU, g));
    Vec v(4);
    for (auto& x : v) x = Elem{static_cast<std::uint32_t>(rng() % 9)};
    REQUIRE(apply_vector(SU.field(), apply_vector(SU.field(), v, g), inverse(SU.field(), g)) == v);
  }
}

TEST_CASE("graph flip sends a point to a hyperplane") {
  Field F = Field::of_order(2);
  auto S = natural_space(Family::SL, 4, F, Sign::none);
  GroupElement flip{Matrix::identity(4), 0, true};
  auto img = apply_element(span_labels(S, {"e1"}), flip);
  CHECK(img.dim() == 3);
  CHECK(img == span_labels(S, {"e2", "e3", "e4"}));
}

TEST_CASE("orbit sizes on subspaces") {
  Field f2 = Field::of_order(2), f3 = Field::of_order(3), f4 = Field::of_order(4);
  {
    auto S = natural_space(Family::SL, 4, f2, Sign::none);
    CHECK(orbit_size(generator_catalog(Family::SL, S), span_labels(S, {"e1", "e2"})) == 35);
  }
  {
    auto S = natural_space(Family::Sp, 4, f2, Sign::none);
    auto gs = generator_catalog(Family::Sp, S);
    CHECK(orbit_size(gs, span_labels(S, {"e1"})) == 15);
    CHECK(orbit_size(gs, span_labels(S, {"e1", "e2"})) == 15);
    CHECK(orbit_size(gs, span_labels(S, {"e1", "f1"})) == 20);
  }
  {
    auto S = natural_space(Family::Omega, 8, f2, Sign::plus);
    auto gs = generator_catalog(Family::Omega, S);
    CHECK(orbit_size(gs, span_labels(S, {"e1", "e2", "e3", "e4"})) == 135);
    CHECK(orbit_size(gs, span_labels(S, {"e1", "e2", "e3", "f4"})) == 135);
    CHECK(orbit_size(gs, Subspace::span(S.V, {vec_add(f2, S.e(1), S.f(1))})) == 120);
  }
  {
    auto S = natural_space(Family::SU, 5, f4, Sign::none);
    auto gs = generator_catalog(Family::SU, S);
    CHECK(orbit_size(gs, span_labels(S, {"e1"})) == 165);
    CHECK(orbit_size(gs, span_labels(S, {"x"})) == 176);
  }
  {
    auto S = natural_space(Family::Omega, 7, f3, Sign::odd);
    auto gs = generator_catalog(Family::Omega, S);
    CHECK(orbit_size(gs, span_labels(S, {"e1"})) == 364);
  }
  {
    auto S = natural_space(Family::Omega, 6, f3, Sign::minus);
    auto gs = generator_catalog(Family::Omega, S);
    // Q(x) = 1 and Q(y) = zeta = 2 are in different square classes: distinct Omega-orbits of nonsingular points.
    CHECK(orbit_size(gs, span_labels(S, {"x"})) == 126);
    CHECK(orbit_size(gs, span_labels(S, {"y"})) == 126);
  }
}

TEST_CASE("pair orbitals and base distances") {
  Field f2 = Field::of_order(2);
  {
    auto S = natural_space(Family::SL, 3, f2, Sign::none);
    auto gs = generator_catalog(Family::SL, S);
    SubspaceModel model(S.V, 1, gs.gens);
    auto orb = orbit_bfs(model, model.encode(span_labels(S, {"e1"})));
    CHECK(orb.size() == 7);
    auto po = pair_orbitals(orb);
    REQUIRE(po.count() == 1);
    CHECK(po.edges[0] == 21);
  }
  {
    auto S = natural_space(Family::Omega, 8, f2, Sign::plus);
    auto gs = generator_catalog(Family::Omega, S);
    SubspaceModel model(S.V, 4, gs.gens);
    auto orb = orbit_bfs(model, model.encode(span_labels(S, {"e1", "e2", "e3", "e4"})));
    auto po = pair_orbitals(orb);
    CHECK(po.count() == 2);
    std::uint64_t total = 0;
    for (auto e : po.edges) total += e;
    CHECK(total == 135 * 134 / 2);
    auto cells = stabilizer_cells(orb);
    CHECK(cells.count() == 3);
    for (std::uint32_t o = 0; o < po.count(); ++o) {
      std::vector<std::uint32_t> nb;
      for (std::uint32_t y = 1; y < orb.size(); ++y)
        if (po.label[y] == o) nb.push_back(y);
      auto d = base_distances(orb, nb, cells);
      int diam = *std::max_element(d.begin(), d.end());
      CHECK(diam == 2);
      CHECK(eccentricity(orb, nb, 17).value() == 2);
      std::vector<std::uint32_t> ids(orb.size());
      for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i;
      CHECK(base_distances(orb, nb, cells_from_labels(ids)) == d);
    }
  }
}

TEST_CASE("exhaustive Schreier generators give the point stabilizer of SL2(3)") {
  auto S = natural_space(Family::SL, 2, Field::of_order(3), Sign::none);
  auto gs = generator_catalog(Family::SL, S);
  SubspaceModel model(S.V, 1, gs.gens);
  auto orb = orbit_bfs(model, model.encode(span_labels(S, {"e1"})));
  CHECK(orb.size() == 4);
  auto full = stabilizer_cells(orb, {1, 20, 4000, true});
  // The point stabilizer (order 6) fixes the base and is transitive on the other 3 points.
  CHECK(full.count() == 2);
  auto sampled = stabilizer_cells(orb);
  CHECK(sampled.count() == 2);
}

TEST_CASE("quadratic forms polarizing to Sp6(2) fall into two orbits") {
  Field f2 = Field::of_order(2);
  auto S = natural_space(Family::Sp, 6, f2, Sign::none);
  auto gs = generator_catalog(Family::Sp, S);
  FormModel model(S, gs.gens);
  Vec plus(6), minus(6);
  minus[0] = minus[3] = f2.one();
  auto a = orbit_bfs(model, model.encode(plus));
  auto b = orbit_bfs(model, model.encode(minus));
  CHECK(a.size() == 36);
  CHECK(b.size() == 28);
  CHECK(arf_invariant(S, plus) == Sign::plus);
  CHECK(arf_invariant(S, minus) == Sign::minus);
}

TEST_CASE("pairs of complementary subspaces") {
  Field f2 = Field::of_order(2);
  auto S = natural_space(Family::SL, 4, f2, Sign::none);
  auto gs = generator_catalog(Family::SL, S, {false, true});
  PairModel model(S.V, 1, gs.gens);
  auto U = span_labels(S, {"e1"});
  auto W = span_labels(S, {"e2", "e3", "e4"});
  auto orb = orbit_bfs(model, model.encode(U, W));
  // SL4(2) on (point, complementary hyperplane) pairs: 15 * 8 = 120, closed under the flip.
  CHECK(orb.size() == 120);
  auto [u, w] = model.decode(orb.code(5));
  CHECK(u.dim() + w.dim() == 4);
  CHECK(meet(u, w).dim() == 0);
}
