#include <doctest.h>

#include "brst/oracle.hpp"

using namespace brst;

namespace {

// Test-side polynomial evaluation at a rational point.
Rational eval_at(const Tps& t, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < t.space().size(); ++i) {
    Rational term = t.coeff(i);
    const auto& e = t.space().exponent(i);
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int p = 0; p < e[k]; ++p) term *= x[k];
    s += term;
  }
  return s;
}

TpsMat random_metric(const std::shared_ptr<const TpsSpace>& sp, int degree, std::uint64_t seed) {
  int m = sp->dim();
  TpsMat g = tps_zero(sp, m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Tps p = random_polynomial(sp, degree, seed, "g" + std::to_string(i) + std::to_string(j));
      if (i == j) p.coeff(0) += 9;
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
      g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = p;
    }
  return g;
}

}  // namespace

TEST_CASE("power series arithmetic") {
  auto sp = TpsSpace::get(2, 3);
  Tps x = Tps::variable(sp, 0), y = Tps::variable(sp, 1);
  Tps one = Tps::constant(sp, 1);
  Tps p = (one + x) * (one + y);
  CHECK(p.jet({0, 1}) == 1);
  CHECK((x * x * x).jet({0, 0, 0}) == 6);
  CHECK((x * x * x * x).is_zero());  // truncated
  TpsMat a = tps_zero(sp, 1, 1);
  a[0][0] = Tps::constant(sp, 2) + x + x * y;
  TpsMat prod = a * inverse(a);
  CHECK(prod[0][0].value() == 1);
  CHECK((prod[0][0] - one).is_zero());
  CHECK((x * y).derivative(1).jet({0}) == 1);
}

TEST_CASE("flat metric has vanishing connection and Schouten tensor") {
  auto sp = TpsSpace::get(3, 3);
  TpsMat g = tps_identity(sp, 3);
  g[0][0].coeff(0) = -1;
  auto G = metric_geometry(g);
  for (const auto& t : G.gamma.data) CHECK(t.is_zero());
  for (const auto& t : G.schouten.data) CHECK(t.is_zero());
}

TEST_CASE("Levi-Civita symbols match a divided-difference estimate") {
  // cubic metric: (4 D_h - D_2h) / 3 is the exact first derivative
  int m = 3;
  auto sp = TpsSpace::get(m, 3);
  TpsMat g = random_metric(sp, 3, 11);
  auto G = metric_geometry(g);
  Rational h(1, 7);
  auto dg = [&](int l, int a, int b) -> Rational {
    auto D = [&](const Rational& step) -> Rational {
      std::vector<Rational> xp(3, Rational(0)), xm(3, Rational(0));
      xp[static_cast<std::size_t>(l)] = step;
      xm[static_cast<std::size_t>(l)] = -step;
      const Tps& f = g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      return (eval_at(f, xp) - eval_at(f, xm)) / (2 * step);
    };
    return (4 * D(h) - D(2 * h)) / 3;
  };
  auto ginv = values(g);
  REQUIRE(invert_rational(ginv));
  for (int r = 0; r < m; ++r)
    for (int mu = 0; mu < m; ++mu)
      for (int n = 0; n < m; ++n) {
        Rational v = 0;
        for (int l = 0; l < m; ++l)
          v += ginv[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)] * (dg(mu, l, n) + dg(n, l, mu) - dg(l, mu, n));
        CHECK(G.gamma.at({r, mu, n}).value() == v / 2);
      }
}

TEST_CASE("curvature symmetries and the trace-free Weyl tensor") {
  for (int m : {3, 4}) {
    auto sp = TpsSpace::get(m, 3);
    auto G = metric_geometry(random_metric(sp, 3, 5 + static_cast<std::uint64_t>(m)));
    for (int r = 0; r < m; ++r)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          CHECK(G.gamma.at({r, a, b}).value() == G.gamma.at({r, b, a}).value());
          for (int c = 0; c < m; ++c) {
            CHECK(G.riemann.at({r, a, b, c}).value() == -G.riemann.at({r, a, c, b}).value());
            // first Bianchi identity
            CHECK((G.riemann.at({r, a, b, c}) + G.riemann.at({r, b, c, a}) + G.riemann.at({r, c, a, b})).value() == 0);
          }
        }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        CHECK(G.schouten.at({a, b}).value() == G.schouten.at({b, a}).value());
        Rational tr = 0;
        for (int r = 0; r < m; ++r) tr += G.weyl.at({r, a, r, b}).value();
        CHECK(tr == 0);
      }
    if (m == 3)
      for (const auto& w : G.weyl.data) CHECK(w.value() == 0);
  }
}

TEST_CASE("constant curvature metric is conformally flat") {
  // g = delta / (1 + k r^2 / 4)^2, Riemannian signature
  int m = 4;
  auto sp = TpsSpace::get(m, 4);
  Tps conf = Tps::constant(sp, 1);
  for (int i = 0; i < m; ++i) conf += Rational(3, 4) * (Tps::variable(sp, i) * Tps::variable(sp, i));
  TpsMat c = tps_zero(sp, 1, 1);
  c[0][0] = conf * conf;
  Tps f = inverse(c)[0][0];
  TpsMat g = tps_zero(sp, m, m);
  for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = f;
  auto G = metric_geometry(g);
  for (const auto& w : G.weyl.data) CHECK(w.value() == 0);
  for (const auto& x : G.cotton.data) CHECK(x.value() == 0);
  CHECK(G.scalar.value() != 0);
}

TEST_CASE("tensor Lie derivative of a metric") {
  auto sp = TpsSpace::get(2, 2);
  TpsTensor g(sp, {false, false});
  g.at({0, 0}) = Tps::constant(sp, -1);
  g.at({1, 1}) = Tps::constant(sp, 1);
  auto L = lie_derivative_components(g);
  // only d xi terms survive on a flat metric
  auto constant_xi = [](GenId id) { return !generator(id).key.jet.empty(); };
  for (const auto& e : L) CHECK(e.evaluate_even([](GenId) { return nullptr; }, constant_xi).is_zero());
  // L g_{01} = g_{11} d_0 xi^1 + g_{00} d_1 xi^0
  Expr expect = Expr::gen(xi(1, {0})) - Expr::gen(xi(0, {1}));
  CHECK(L[1] == expect);
  auto flipped = lie_derivative_components(g, 1);
  CHECK_FALSE(flipped[1] == expect);
}
