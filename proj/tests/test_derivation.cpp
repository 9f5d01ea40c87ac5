#include "doctest.h"

#include "brst/derivation.hpp"

using namespace brst;

namespace {

Expr g(GenId id) { return Expr::gen(id); }

}  // namespace

TEST_CASE("d squares to zero") {
  auto ops = StandardOps::make(3);
  Expr e = g(field("f", {})) * g(ghost("c", {0})) + g(dx(1)) * g(field("h", {2}));
  CHECK(ops.d->apply(ops.d->apply(e)).is_zero());
}

TEST_CASE("d of a product follows graded Leibniz") {
  auto ops = StandardOps::make(2);
  Expr a = g(ghost("c", {}));
  Expr b = g(field("f", {}));
  Expr lhs = ops.d->apply(a * b);
  Expr rhs = ops.d->apply(a) * b - a * ops.d->apply(b);
  CHECK(lhs == rhs);
}

TEST_CASE("Cartan relations for i_xi, d and L_xi") {
  auto ops = StandardOps::make(2);
  Expr e = g(dx(0)) * g(field("f", {})) + g(dx(1)) * g(dx(0)) * g(field("h", {}));
  // L_xi anticommutes with d
  CHECK((ops.d->apply(ops.lie_xi->apply(e)) + ops.lie_xi->apply(ops.d->apply(e))).is_zero());
  // [L_xi, i_xi] = i_{[xi,xi]}
  Interior i_v("i_v", xi_bracket(2), 2);
  Expr lhs = ops.lie_xi->apply(ops.i_xi->apply(e)) - ops.i_xi->apply(ops.lie_xi->apply(e));
  CHECK(lhs == i_v.apply(e));
}

TEST_CASE("inverse generators follow D(X^-1) = -X^-1 D(X) X^-1") {
  register_inverse("Einv_t", "e_t", 2);
  auto ops = StandardOps::make(2);
  // sum_k e[i][k] Einv[k][j] is constant, so its derivative vanishes after
  // using d(e E) = d(e) E + e d(E); check on the explicit product.
  Expr prod;
  for (int k = 0; k < 2; ++k)
    prod += g(field("e_t", {0, k})) * g(inverse_component("Einv_t", {k, 1}));
  Expr dp = ops.d->apply(prod);
  // dp = de E - e E de E; not zero symbolically, but its coefficient
  // structure is checked against the hand expansion.
  Expr expect;
  for (int k = 0; k < 2; ++k) {
    expect += ops.d->apply(g(field("e_t", {0, k}))) * g(inverse_component("Einv_t", {k, 1}));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        expect -= g(field("e_t", {0, k})) * g(inverse_component("Einv_t", {k, a})) *
                  ops.d->apply(g(field("e_t", {a, b}))) * g(inverse_component("Einv_t", {b, 1}));
  }
  CHECK(dp == expect);
}

TEST_CASE("rule derivation prolongs along jets") {
  RuleDerivation s("s", {0, 1});
  GenId c = ghost("c", {});
  GenId a = field("A", {0});
  s.set_rule(a, g(prolong(c, 0)));
  s.set_rule(c, Expr());
  CHECK(s.on_generator(prolong(a, 1)) == g(prolong(prolong(c, 0), 1)));
  CHECK_THROWS_AS(s.on_generator(field("B", {})), UndefinedAction);
}
