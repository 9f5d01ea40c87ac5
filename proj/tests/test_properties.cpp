#include "doctest.h"

#include <random>

#include "brst/identity.hpp"
#include "brst/scene.hpp"

using namespace brst;

namespace {

Expr g(GenId id) { return Expr::gen(id); }

// Random element built from at most six generators of mixed parity.
Expr random_expr(std::mt19937_64& r, int terms) {
  const GenId pool[] = {dx(0), dx(1), field("f", {0}), field("f", {1}), ghost("c", {0}), xi(0)};
  Expr e;
  for (int t = 0; t < terms; ++t) {
    Expr m(make_rational(static_cast<long>(r() % 7) - 3, static_cast<long>(r() % 2) + 1));
    int len = static_cast<int>(r() % 3);
    for (int k = 0; k < len; ++k) m = m * g(pool[r() % 6]);
    e += m;
  }
  return e;
}

Expr random_homogeneous(std::mt19937_64& r, Bidegree b) {
  Expr e;
  for (int t = 0; t < 3; ++t) {
    Expr m(make_rational(static_cast<long>(r() % 5) + 1));
    m = m * g(field("h", {static_cast<int>(r() % 3)}));
    for (int f = 0; f < b.form; ++f) m = m * g(dx(static_cast<int>(r() % 3)));
    for (int h = 0; h < b.ghost; ++h) m = m * g(r() % 2 ? xi(static_cast<int>(r() % 3)) : ghost("c", {static_cast<int>(r() % 3)}));
    e += m;
  }
  return e;
}

}  // namespace

TEST_CASE("normalize is idempotent and bidegree parts sum to the input") {
  std::mt19937_64 r(1);
  for (int k = 0; k < 30; ++k) {
    Expr e = random_expr(r, 5);
    std::vector<std::pair<std::vector<GenId>, Rational>> raw;
    for (const auto& t : e.terms()) raw.push_back({std::vector<GenId>(t.mono.begin(), t.mono.end()), t.coeff});
    CHECK(Expr::normalize(raw) == e);
    Expr sum;
    for (const auto& [b, part] : e.bidegree_split()) {
      CHECK(part.bidegree() == b);
      sum += part;
    }
    CHECK(sum == e);
  }
}

TEST_CASE("homogeneous elements graded-commute") {
  std::mt19937_64 r(2);
  const Bidegree degs[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
  for (int k = 0; k < 30; ++k) {
    Bidegree bx = degs[r() % 6], by = degs[r() % 6];
    Expr x = random_homogeneous(r, bx), y = random_homogeneous(r, by);
    Rational s = bx.odd() && by.odd() ? Rational(-1) : Rational(1);
    CHECK(x * y == s * (y * x));
  }
}

TEST_CASE("interior product powers vanish past the form degree") {
  auto ops = StandardOps::make(3);
  Expr two = g(field("F", {0})) * g(dx(0)) * g(dx(1)) + g(field("F", {1})) * g(dx(1)) * g(dx(2));
  Expr once = ops.i_xi->apply(two), twice = ops.i_xi->apply(once);
  CHECK_FALSE(twice.is_zero());
  CHECK(ops.i_xi->apply(twice).is_zero());
  // e^{i_xi} F = F + i F + 1/2 i i F, and 0-forms are fixed
  CHECK(exp_interior(two, *ops.i_xi) == two + once + Rational(1, 2) * twice);
  Expr f = g(field("F", {2}));
  CHECK(exp_interior(f, *ops.i_xi) == f);
  for (int mu = 0; mu < 3; ++mu) CHECK(ops.i_xi->apply(g(dx(mu))) == g(xi(mu)));
}

TEST_CASE("sigma rules collapse to s rules when xi vanishes") {
  auto sc = shift_algebra(define_yang_mills(2, 2, true));
  auto kill_xi = [](GenId id) -> std::optional<Expr> {
    if (generator(id).key.kind == GenKind::DiffeoGhost) return Expr();
    return std::nullopt;
  };
  for (GenId id : sc.roster) {
    INFO(render(id));
    CHECK(sc.sigma->on_generator(id).substitute(kill_xi) == sc.s->on_generator(id));
  }
}

TEST_CASE("inverse relation reduction") {
  register_inverse("Kp", "kp", 3);
  auto U = [](int i, int j) { return g(inverse_component("Kp", {i, j})); };
  auto X = [](int i, int j) { return g(field("kp", {i, j})); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Expr ux = U(i, 0) * X(0, j) + U(i, 1) * X(1, j) + U(i, 2) * X(2, j) - Expr::constant(i == j ? 1 : 0);
      Expr xu = X(i, 0) * U(0, j) + X(i, 1) * U(1, j) + X(i, 2) * U(2, j) - Expr::constant(i == j ? 1 : 0);
      Expr c = g(ghost("c", {0}));
      CHECK(reduce_inverse_relations(ux * c, true).is_zero());
      CHECK(reduce_inverse_relations(xu * c, false).is_zero());
    }
  // not a consequence of U X = 1
  Expr bogus = U(0, 2) * X(2, 1) - U(0, 1) * X(1, 1);
  CHECK_FALSE(reduce_inverse_relations(bogus, true).is_zero());
  CHECK_FALSE(reduce_inverse_relations(bogus, false).is_zero());
}
