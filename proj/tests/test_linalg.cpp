#include <random>
#include <set>

#include "doctest.h"
#include "orbdiam/linalg.hpp"

using namespace orbdiam;

namespace {

Vec v_of(std::initializer_list<std::uint32_t> xs) {
  Vec v;
  for (auto x : xs) v.push_back(Elem{x});
  return v;
}

Vec unit(int n, int i) {
  Vec v(n);
  v[i] = Elem{1};
  return v;
}

Subspace random_subspace(const VectorSpaceSpec& V, int k, std::mt19937& rng) {
  std::vector<Vec> rows;
  for (int i = 0; i < k; ++i) {
    Vec v(V.n);
    for (auto& x : v) x = Elem{static_cast<std::uint32_t>(rng() % V.field.order())};
    rows.push_back(v);
  }
  return Subspace::span(V, rows);
}

// dim(A ∩ B) from the kernel of [A; -B]: solutions (x, y) with xA = yB.
int meet_dim_by_kernel(const Subspace& a, const Subspace& b) {
  const Field& F = a.field();
  int ka = a.dim(), kb = b.dim(), n = a.n();
  Matrix m(n, ka + kb);
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < n; ++j) m.at(j, i) = a.basis().at(i, j);
  for (int i = 0; i < kb; ++i)
    for (int j = 0; j < n; ++j) m.at(j, ka + i) = F.neg(b.basis().at(i, j));
  return nullspace(F, m).rows();
}

}  // namespace

TEST_CASE("echelon canonical form") {
  VectorSpaceSpec V(Field::make(2, 1), 4);
  Subspace s = Subspace::span(V, {v_of({1, 1, 0, 0}), v_of({0, 1, 1, 0})});
  CHECK(s.basis() == Matrix::from_rows({v_of({1, 0, 1, 0}), v_of({0, 1, 1, 0})}, 4));
  Subspace t = Subspace::span(V, {v_of({0, 1, 1, 0}), v_of({1, 1, 0, 0}), v_of({1, 0, 1, 0})});
  CHECK(s == t);
  CHECK(Subspace::span(V, {unit(4, 0), unit(4, 0)}).dim() == 1);
  CHECK(Subspace::span(V, {}).dim() == 0);
}

TEST_CASE("meet and join") {
  VectorSpaceSpec V(Field::make(3, 1), 5);
  Subspace a = Subspace::span(V, {unit(5, 0), unit(5, 1)});
  Subspace b = Subspace::span(V, {unit(5, 1), unit(5, 2)});
  CHECK(meet(a, b) == Subspace::span(V, {unit(5, 1)}));
  CHECK(meet(a, a) == a);
  CHECK(join(Subspace::span(V, {unit(5, 0)}), Subspace::span(V, {unit(5, 1)})) == a);
  CHECK(join(a, Subspace::zero(V)) == a);
  std::mt19937 rng(7);
  for (int it = 0; it < 300; ++it) {
    Subspace x = random_subspace(V, 1 + rng() % 4, rng);
    Subspace y = random_subspace(V, 1 + rng() % 4, rng);
    Subspace m = meet(x, y);
    REQUIRE(m.dim() == meet_dim_by_kernel(x, y));
    REQUIRE(m == annihilator(join(annihilator(x), annihilator(y))));
    REQUIRE(x.dim() + y.dim() == m.dim() + join(x, y).dim());
  }
}

TEST_CASE("modular law over all pairs of 2-spaces of GF(2)^4") {
  VectorSpaceSpec V(Field::make(2, 1), 4);
  auto all = enumerate_subspaces(V, 2);
  REQUIRE(all.size() == 35);
  for (auto& a : all)
    for (auto& b : all) REQUIRE(a.dim() + b.dim() == meet(a, b).dim() + join(a, b).dim());
}

TEST_CASE("annihilator") {
  VectorSpaceSpec V(Field::make(2, 1), 4);
  Subspace e1 = Subspace::span(V, {unit(4, 0)});
  CHECK(annihilator(e1) == Subspace::span(V, {unit(4, 1), unit(4, 2), unit(4, 3)}));
  CHECK(annihilator(Subspace::zero(V)).dim() == 4);
  CHECK(annihilator(annihilator(e1)) == e1);
}

TEST_CASE("codes") {
  VectorSpaceSpec V(Field::make(3, 1), 5);
  Subspace z = Subspace::zero(V);
  for (auto w : z.encode().words) CHECK(w == 0);
  std::mt19937 rng(11);
  for (int it = 0; it < 1000; ++it) {
    Subspace s = random_subspace(V, rng() % 6, rng);
    auto c = s.encode();
    REQUIRE(Subspace::decode(V, c) == s);
    REQUIRE(Subspace::decode(V, c).encode() == c);
  }
  auto c = Subspace::span(V, {unit(5, 1)}).encode();
  c.words[1] |= 1ULL << 63;
  CHECK_THROWS_AS(Subspace::decode(V, c), std::invalid_argument);
  CHECK_THROWS_AS(Subspace::decode(V, SubspaceCode{{7}}), std::invalid_argument);
  VectorSpaceSpec W(Field::make(2, 1), 4);
  auto all = enumerate_subspaces(W, 2);
  std::set<SubspaceCode> codes;
  for (auto& s : all) codes.insert(s.encode());
  CHECK(codes.size() == 35);
  // code order matches enumeration order
  for (std::size_t i = 1; i < all.size(); ++i) REQUIRE(all[i - 1].encode() < all[i].encode());
}

TEST_CASE("code order equals element lex order") {
  VectorSpaceSpec V(Field::make(5, 1), 16);
  std::mt19937 rng(3);
  for (int it = 0; it < 200; ++it) {
    Subspace a = random_subspace(V, 4, rng), b = random_subspace(V, 4, rng);
    if (a.dim() != b.dim()) continue;
    bool lex = a.basis().data() < b.basis().data();
    REQUIRE((a.encode() < b.encode()) == lex);
  }
}

TEST_CASE("gaussian binomials and enumeration") {
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(6, 2, 2) == 651);
  CHECK(gaussian_binomial(5, 0, 7) == 1);
  CHECK(gaussian_binomial(5, 6, 7) == 0);
  CHECK_THROWS_AS(gaussian_binomial(40, 20, 1024), std::overflow_error);
  for (std::uint32_t q : {2u, 3u})
    for (int n = 2; n <= 6; ++n)
      for (int k = 0; k <= n; ++k) {
        VectorSpaceSpec V(Field::of_order(q), n);
        REQUIRE(enumerate_subspaces(V, k).size() == gaussian_binomial(n, k, q));
      }
  VectorSpaceSpec V(Field::make(2, 1), 4);
  auto zero = enumerate_subspaces(V, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].dim() == 0);
  auto filtered = enumerate_subspaces(V, 2, [](const Subspace& s) { return s.contains(unit(4, 0)); });
  CHECK(filtered.size() == 7);
  VectorSpaceSpec big(Field::make(3, 1), 10);
  try {
    enumerate_subspaces(big, 5, {}, 1000);
    FAIL("expected budget failure");
  } catch (const BudgetExceeded& e) {
    CHECK(e.needed() == gaussian_binomial(10, 5, 3));
  }
}

TEST_CASE("matrix inverse and determinant") {
  Field F = Field::make(5, 1);
  std::mt19937 rng(5);
  int invertible = 0;
  for (int it = 0; it < 200; ++it) {
    Matrix m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = Elem{static_cast<std::uint32_t>(rng() % 5)};
    auto inv = inverse(F, m);
    REQUIRE(inv.has_value() == (determinant(F, m) != F.zero()));
    if (inv) {
      ++invertible;
      REQUIRE(mat_mul(F, m, *inv) == Matrix::identity(4));
      REQUIRE(F.mul(determinant(F, m), determinant(F, *inv)) == F.one());
    }
  }
  CHECK(invertible > 100);
}
