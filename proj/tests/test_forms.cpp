#include "doctest.h"
#include "orbdiam/forms.hpp"

using namespace orbdiam;

namespace {

std::uint64_t count_by_enumeration(const ClassicalSpace& S, const SubspaceClass& cls, int k) {
  auto all = enumerate_subspaces(S.V, k, [&](const Subspace& A) { return class_matches(cls, classify_subspace(S, A)); });
  return all.size();
}

SubspaceClass cls(SubspaceTag t, SubType s = SubType::na, int disc = -1) { return {t, s, disc}; }

}  // namespace

TEST_CASE("standard spaces") {
  Field f2 = Field::make(2, 1), f3 = Field::make(3, 1), f4 = Field::make(2, 2);
  auto o4 = make_space(FormKind::quadratic, 4, f2, Sign::plus);
  for (int i = 1; i <= 2; ++i) {
    CHECK(eval_q(o4, o4.e(i)) == f2.zero());
    CHECK(eval_q(o4, o4.f(i)) == f2.zero());
    for (int j = 1; j <= 2; ++j) CHECK(eval_form(o4, o4.e(i), o4.f(j)) == (i == j ? f2.one() : f2.zero()));
  }
  CHECK(eval_q(o4, vec_add(f2, o4.e(1), o4.f(1))) == f2.one());

  auto sp4 = make_space(FormKind::symplectic, 4, f3);
  CHECK(eval_form(sp4, sp4.e(1), sp4.f(1)) == f3.one());
  CHECK(eval_form(sp4, sp4.f(1), sp4.e(1)) == f3.neg(f3.one()));
  for (auto& v : Subspace::whole(sp4.V).vectors()) REQUIRE(eval_form(sp4, v, v) == f3.zero());

  auto u3 = make_space(FormKind::unitary, 3, f4);
  CHECK(u3.labels() == std::vector<std::string>{"e1", "f1", "x"});
  CHECK(eval_form(u3, u3.x(), u3.x()) == f4.one());

  auto o6m = make_space(FormKind::quadratic, 6, f3, Sign::minus);
  CHECK(eval_q(o6m, o6m.y()) == *o6m.zeta);
  CHECK(eval_q(o6m, o6m.x()) == f3.one());
  CHECK(eval_form(o6m, o6m.x(), o6m.y()) == f3.one());

  CHECK_THROWS_AS(make_space(FormKind::symplectic, 5, f3), std::invalid_argument);
  CHECK_THROWS_AS(make_space(FormKind::unitary, 3, f3), std::invalid_argument);
  CHECK_THROWS_AS(make_space(FormKind::quadratic, 5, f2, Sign::odd), std::invalid_argument);
  CHECK_THROWS_AS(make_space(FormKind::quadratic, 4, f2, Sign::odd), std::invalid_argument);
  CHECK_THROWS_AS(eval_q(sp4, sp4.e(1)), std::invalid_argument);
  CHECK(o6m.key() == R"({"kind":"quadratic","n":6,"p":3,"e":1,"epsilon":"-","zeta":2})");
}

TEST_CASE("polarization identity") {
  for (std::uint32_t q : {2u, 3u})
    for (int n = 2; n <= 6; ++n)
      for (Sign s : {Sign::plus, Sign::minus, Sign::odd}) {
        if ((s == Sign::odd) != (n % 2 == 1)) continue;
        if (s == Sign::odd && q == 2) continue;
        auto S = make_space(FormKind::quadratic, n, Field::of_order(q), s);
        CHECK(polarizes(S));
        if (n > 4) continue;
        const Field& F = S.field();
        auto vs = Subspace::whole(S.V).vectors();
        for (auto& u : vs)
          for (auto& v : vs)
            REQUIRE(eval_q(S, vec_add(F, u, v)) == F.add(F.add(eval_q(S, u), eval_q(S, v)), eval_form(S, u, v)));
      }
}

TEST_CASE("perp and radical") {
  Field f3 = Field::make(3, 1);
  auto sp4 = make_space(FormKind::symplectic, 4, f3);
  auto pr = perp_radical(sp4, Subspace::span(sp4.V, {sp4.e(1)}));
  CHECK(pr.perp == Subspace::span(sp4.V, {sp4.e(1), sp4.e(2), sp4.f(2)}));
  auto nd = Subspace::span(sp4.V, {sp4.e(1), sp4.f(1)});
  CHECK(perp_radical(sp4, nd).radical.dim() == 0);
  CHECK(perp_radical(sp4, Subspace::whole(sp4.V)).perp.dim() == 0);

  for (auto S : {make_space(FormKind::unitary, 3, Field::make(2, 2)), make_space(FormKind::quadratic, 5, f3, Sign::odd),
                 make_space(FormKind::quadratic, 4, Field::make(2, 1), Sign::minus)}) {
    for (int k = 1; k < S.n(); ++k)
      for (auto& A : enumerate_subspaces(S.V, k)) {
        auto pr2 = perp_radical(S, A);
        REQUIRE(pr2.perp.dim() == S.n() - k);
        if (pr2.radical.dim() == 0) REQUIRE(perp_radical(S, pr2.perp).perp == A);
      }
  }
}

TEST_CASE("subspace classification") {
  Field f2 = Field::make(2, 1), f3 = Field::make(3, 1);
  auto o8 = make_space(FormKind::quadratic, 8, f2, Sign::plus);
  CHECK(classify_subspace(o8, Subspace::span(o8.V, {o8.e(1), o8.e(2)})).tag == SubspaceTag::totally_singular);
  auto c = classify_subspace(o8, Subspace::span(o8.V, {o8.e(1), o8.f(1)}));
  CHECK(c.tag == SubspaceTag::nondegenerate);
  CHECK(c.subtype == SubType::plus);
  auto o6m = make_space(FormKind::quadratic, 6, f3, Sign::minus);
  auto c2 = classify_subspace(o6m, Subspace::span(o6m.V, {o6m.x(), o6m.y()}));
  CHECK(c2.tag == SubspaceTag::nondegenerate);
  CHECK(c2.subtype == SubType::minus);
  auto p = classify_subspace(o8, Subspace::span(o8.V, {vec_add(f2, o8.e(1), o8.f(1))}));
  CHECK(p.tag == SubspaceTag::nonsingular_point);
  for (auto S : {o8, o6m, make_space(FormKind::symplectic, 6, f3), make_space(FormKind::unitary, 5, Field::make(2, 2))}) {
    int w = witt_index(S);
    for (int k = 1; k <= w; ++k) {
      std::vector<Vec> rows;
      for (int i = 1; i <= k; ++i) rows.push_back(S.e(i));
      REQUIRE(classify_subspace(S, Subspace::span(S.V, rows)).tag == SubspaceTag::totally_singular);
    }
  }
}

TEST_CASE("witt index") {
  Field f2 = Field::make(2, 1), f3 = Field::make(3, 1);
  CHECK(witt_index(make_space(FormKind::quadratic, 8, f2, Sign::plus)) == 4);
  CHECK(witt_index(make_space(FormKind::quadratic, 6, f2, Sign::minus)) == 2);
  CHECK(witt_index(make_space(FormKind::quadratic, 6, f2, Sign::minus), std::nullopt, true) == 2);
  CHECK(witt_index(make_space(FormKind::symplectic, 6, f3)) == 3);
  CHECK(witt_index(make_space(FormKind::quadratic, 5, f3, Sign::odd), std::nullopt, true) == 2);
  CHECK(witt_index(make_space(FormKind::unitary, 5, Field::make(2, 2))) == 2);
  // greedy agrees with exhaustive search on every nondegenerate 4-space of O_6^-(2)
  auto S = make_space(FormKind::quadratic, 6, f2, Sign::minus);
  for (auto& A : enumerate_subspaces(S.V, 4)) {
    if (classify_subspace(S, A).tag != SubspaceTag::nondegenerate) continue;
    REQUIRE(witt_index(S, A) == witt_index(S, A, true));
  }
}

TEST_CASE("vector counts by Q value") {
  auto o8 = make_space(FormKind::quadratic, 8, Field::make(2, 1), Sign::plus);
  CHECK(count_vectors_by_q(o8)[1] == 120);
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (int n = 2; n <= 5; ++n)
      for (Sign s : {Sign::plus, Sign::minus, Sign::odd}) {
        if ((s == Sign::odd) != (n % 2 == 1) || (s == Sign::odd && q % 2 == 0)) continue;
        auto S = make_space(FormKind::quadratic, n, Field::of_order(q), s);
        std::vector<std::uint64_t> brute(q, 0);
        for (auto& v : Subspace::whole(S.V).vectors()) ++brute[eval_q(S, v).value];
        REQUIRE(count_vectors_by_q(S) == brute);
      }
}

TEST_CASE("closed-form counts agree with enumeration") {
  Field f2 = Field::make(2, 1), f3 = Field::make(3, 1), f4 = Field::make(2, 2);
  CHECK(predict_counts(make_space(FormKind::quadratic, 8, f2, Sign::plus), cls(SubspaceTag::nonsingular_point), 1) == 120);
  auto u5 = make_space(FormKind::unitary, 5, f4);
  CHECK(predict_counts(u5, cls(SubspaceTag::nondegenerate), 1) == 176);
  CHECK(predict_counts(u5, cls(SubspaceTag::totally_singular), 1) == 165);
  CHECK(count_by_enumeration(u5, cls(SubspaceTag::nondegenerate), 1) == 176);
  CHECK(count_by_enumeration(u5, cls(SubspaceTag::totally_singular), 1) == 165);
  auto o7 = make_space(FormKind::quadratic, 7, f3, Sign::odd);
  CHECK(predict_counts(o7, cls(SubspaceTag::nondegenerate, SubType::minus), 2) == 22113);
  CHECK(count_by_enumeration(o7, cls(SubspaceTag::nondegenerate, SubType::minus), 2) == 22113);
  CHECK(predict_counts(make_space(FormKind::quadratic, 8, f2, Sign::plus), cls(SubspaceTag::totally_singular), 4) == 270);
  CHECK(predict_counts(make_space(FormKind::symplectic, 6, f2), cls(SubspaceTag::nondegenerate), 2) == 336);

  std::vector<ClassicalSpace> spaces;
  for (std::uint32_t q : {2u, 3u}) {
    Field F = Field::of_order(q);
    for (int n : {4, 6}) spaces.push_back(make_space(FormKind::symplectic, n, F));
    for (int n = 2; n <= 6; ++n)
      for (Sign s : {Sign::plus, Sign::minus, Sign::odd}) {
        if ((s == Sign::odd) != (n % 2 == 1) || (s == Sign::odd && q == 2)) continue;
        if (q == 3 && n == 6) continue;
        spaces.push_back(make_space(FormKind::quadratic, n, F, s));
      }
  }
  spaces.push_back(make_space(FormKind::quadratic, 7, f3, Sign::odd));
  spaces.push_back(make_space(FormKind::quadratic, 8, f2, Sign::plus));
  spaces.push_back(make_space(FormKind::quadratic, 8, f2, Sign::minus));
  spaces.push_back(make_space(FormKind::quadratic, 6, f3, Sign::plus));
  spaces.push_back(make_space(FormKind::quadratic, 6, f3, Sign::minus));
  for (int n = 2; n <= 4; ++n) spaces.push_back(make_space(FormKind::unitary, n, f4));
  spaces.push_back(make_space(FormKind::unitary, 3, Field::make(3, 2)));

  for (auto& S : spaces) {
    std::uint64_t q = S.field().order();
    for (int k = 1; k < S.n(); ++k) {
      if (gaussian_binomial(S.n(), k, q) > 120000) continue;
      auto all = enumerate_subspaces(S.V, k);
      std::vector<SubspaceClass> got;
      for (auto& A : all) got.push_back(classify_subspace(S, A));
      std::vector<SubspaceClass> wanted = {cls(SubspaceTag::totally_singular), cls(SubspaceTag::nondegenerate)};
      if (S.kind == FormKind::quadratic) {
        wanted.push_back(cls(SubspaceTag::nondegenerate, SubType::plus));
        wanted.push_back(cls(SubspaceTag::nondegenerate, SubType::minus));
        if (q % 2) {
          wanted.push_back(cls(SubspaceTag::nondegenerate, SubType::na, 0));
          wanted.push_back(cls(SubspaceTag::nondegenerate, SubType::na, 1));
        } else {
          wanted.push_back(cls(SubspaceTag::nonsingular_point));
        }
      }
      for (auto& w : wanted) {
        std::uint64_t c = 0;
        for (auto& g : got) c += class_matches(w, g);
        CAPTURE(S.key());
        CAPTURE(k);
        CAPTURE(w.str());
        REQUIRE(predict_counts(S, w, k) == c);
      }
    }
  }
}

TEST_CASE("group orders") {
  CHECK(to_string_u128(expected_order(Family::Sp, 4, 2)) == "720");
  CHECK(to_string_u128(expected_order(Family::SU, 3, 2)) == "216");
  CHECK(to_string_u128(expected_order(Family::GU, 3, 2)) == "648");
  CHECK(to_string_u128(expected_order(Family::SL, 2, 3)) == "24");
  CHECK(to_string_u128(expected_order(Family::SL, 4, 2)) == "20160");
  CHECK(to_string_u128(expected_order(Family::GO, 3, 3, Sign::odd)) == "48");
  CHECK(to_string_u128(expected_order(Family::Omega, 8, 2, Sign::plus)) == "174182400");
  CHECK(to_string_u128(order_go(7, 3, Sign::odd)) == "18341406720");
}

TEST_CASE("form types of quadratic forms polarizing to the symplectic gram") {
  Field f2 = Field::make(2, 1);
  auto sp4 = make_space(FormKind::symplectic, 4, f2);
  CHECK(arf_invariant(sp4, Vec(4)) == Sign::plus);
  for (int n : {4, 6}) {
    auto sp = make_space(FormKind::symplectic, n, f2);
    int plus = 0, minus = 0;
    for (auto& d : Subspace::whole(sp.V).vectors()) (arf_invariant(sp, d) == Sign::plus ? plus : minus)++;
    int h = n / 2;
    CHECK(plus == (1 << (n - 1)) + (1 << (h - 1)));
    CHECK(minus == (1 << (n - 1)) - (1 << (h - 1)));
  }
  // Q + l^2 with l the functional dual to e_1: adds 1 to the diagonal coefficient of e_1.
  Vec d(4);
  d[0] = Elem{1};
  auto s = arf_invariant(sp4, d);
  CHECK((s == Sign::plus || s == Sign::minus));
}
