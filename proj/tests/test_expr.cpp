#include "doctest.h"

#include "brst/expr.hpp"

using namespace brst;

TEST_CASE("odd factors anticommute into canonical order") {
  Expr a = Expr::gen(dx(1)) * Expr::gen(dx(0));
  Expr b = Expr::gen(dx(0)) * Expr::gen(dx(1));
  CHECK(a == -b);
  CHECK(a.str() == "-dx0*dx1");
}

TEST_CASE("odd squares vanish") {
  Expr x = Expr::gen(xi(0));
  CHECK((x * x).is_zero());
  Expr e = Expr::gen(field("e", {0, 0}));
  CHECK_FALSE((e * e).is_zero());
}

TEST_CASE("normalize applies permutation sign") {
  GenId a = ghost("c", {0}), b = ghost("c", {1}), c = dx(2);
  Expr n = Expr::normalize({{{c, b, a}, Rational(1)}});
  Expr m = Expr::gen(a) * Expr::gen(b) * Expr::gen(c);
  CHECK(n == -m);
}

TEST_CASE("bidegree split and parity") {
  Expr e = Expr::gen(dx(0)) + Expr::gen(ghost("c", {0}));
  auto parts = e.bidegree_split();
  CHECK(parts.size() == 2);
  CHECK(e.parity() == std::optional<bool>(true));
  CHECK_FALSE(e.bidegree().has_value());
  Expr mixed = e + Expr::constant(1);
  CHECK_FALSE(mixed.parity().has_value());
}

TEST_CASE("product is associative on random-ish inputs") {
  Expr a = Expr::gen(dx(0)) + Expr::gen(field("f", {}, {1})) * Expr::gen(dx(1));
  Expr b = Expr::gen(ghost("c", {})) - Expr::gen(xi(1)) * Expr::constant(1, 2);
  Expr c = Expr::gen(dx(1)) * Expr::gen(field("g", {})) + Expr::constant(3);
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * (b + c) == a * b + a * c);
}

TEST_CASE("right coefficients") {
  GenId f = field("f", {});
  Expr one_form = Expr::gen(dx(1)) * Expr::gen(f);
  CHECK(one_form.right_coefficient(dx(1)) == Expr::gen(f));
  Expr two_form = Expr::gen(dx(1)) * Expr::gen(dx(0)) * Expr::gen(f);
  CHECK(two_form.right_coefficient(dx(0), dx(1)) == -Expr::gen(f));
}

TEST_CASE("evaluate_even substitutes rationals and keeps odd factors") {
  GenId f = field("f", {});
  GenId c = ghost("c", {});
  Expr e = Expr::gen(f) * Expr::gen(f) * Expr::gen(c);
  Rational v(3);
  Expr r = e.evaluate_even([&](GenId g) -> const Rational* { return g == f ? &v : nullptr; });
  CHECK(r == Expr::gen(c) * Rational(9));
}

TEST_CASE("jet overflow is reported") {
  int old = jet_truncation();
  set_jet_truncation(2);
  GenId f = field("f", {}, {0, 1});
  CHECK_THROWS_AS(prolong(f, 0), JetOverflow);
  set_jet_truncation(old);
}
