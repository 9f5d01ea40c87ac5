#include <doctest.h>

#include <random>

#include "brst/matrix.hpp"

using namespace brst;

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  long small() { return static_cast<long>(g() % 11) - 5; }
  Rational q() { return make_rational(small(), static_cast<long>(g() % 3) + 1); }
};

// Homogeneous entries of a chosen bidegree built from a few generators.
Expr random_entry(Rng& r, Bidegree b, int salt) {
  Expr e;
  for (int k = 0; k < 2; ++k) {
    Expr t(r.q());
    int idx = static_cast<int>(r.g() % 3);
    if (b.form == 0 && b.ghost == 0) t = t * Expr::gen(field("f", {idx, salt}));
    for (int f = 0; f < b.form; ++f) t = t * Expr::gen(field("a", {idx, f, salt})) * Expr::gen(dx(f));
    for (int h = 0; h < b.ghost; ++h) t = t * Expr::gen(ghost("c", {idx, h, salt}));
    e += t;
  }
  return e;
}

MatrixExpr random_matrix(Rng& r, int n, Bidegree b, int salt) {
  MatrixExpr M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M.at(i, j) = random_entry(r, b, salt * 100 + i * 10 + j);
  return M;
}

Rational sign(bool odd) { return odd ? Rational(-1) : Rational(1); }

// Random rational member of mobius(m): [[a, al, 0], [th, A, al^t], [0, th^t, -a]].
MatrixExpr mobius_member(Rng& r, const EtaMetric& eta) {
  int m = eta.dim(), last = m + 1;
  std::vector<std::vector<Rational>> M(static_cast<std::size_t>(m + 2), std::vector<Rational>(static_cast<std::size_t>(m + 2)));
  auto at = [&](int i, int j) -> Rational& { return M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  auto eta_at = [&](int b) { return eta.diagonal[static_cast<std::size_t>(b)]; };
  Rational a = r.q();
  at(0, 0) = a;
  at(last, last) = -a;
  for (int b = 0; b < m; ++b) {
    Rational al = r.q(), th = r.q();
    at(0, b + 1) = al;
    at(b + 1, last) = eta_at(b) * al;
    at(b + 1, 0) = th;
    at(last, b + 1) = eta_at(b) * th;
  }
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y) {
      Rational w = r.q();
      at(x + 1, y + 1) = eta_at(x) * w;
      at(y + 1, x + 1) = -eta_at(y) * w;
    }
  return MatrixExpr::from_rationals(M);
}

MatrixExpr poincare_member(Rng& r, const EtaMetric& eta) {
  int m = eta.dim();
  std::vector<std::vector<Rational>> M(static_cast<std::size_t>(m + 1), std::vector<Rational>(static_cast<std::size_t>(m + 1)));
  auto eta_at = [&](int b) { return eta.diagonal[static_cast<std::size_t>(b)]; };
  for (int x = 0; x < m; ++x) {
    M[static_cast<std::size_t>(x)][static_cast<std::size_t>(m)] = r.q();
    for (int y = x + 1; y < m; ++y) {
      Rational w = r.q();
      M[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = eta_at(x) * w;
      M[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = -eta_at(y) * w;
    }
  }
  return MatrixExpr::from_rationals(M);
}

}  // namespace

TEST_CASE("graded Jacobi identity on random homogeneous triples") {
  const Bidegree degs[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  Rng r(11);
  for (int trial = 0; trial < 12; ++trial) {
    Bidegree bx = degs[r.g() % 4], by = degs[r.g() % 4], bz = degs[r.g() % 4];
    MatrixExpr x = random_matrix(r, 2, bx, 1), y = random_matrix(r, 2, by, 2), z = random_matrix(r, 2, bz, 3);
    bool px = bx.odd(), py = by.odd(), pz = bz.odd();
    MatrixExpr j = sign(px && pz) * graded_commutator(x, graded_commutator(y, z)) +
                   sign(py && px) * graded_commutator(y, graded_commutator(z, x)) +
                   sign(pz && py) * graded_commutator(z, graded_commutator(x, y));
    INFO(to_string(bx) << " " << to_string(by) << " " << to_string(bz));
    CHECK(j.is_zero());
  }
}

TEST_CASE("graded commutator symmetry and odd squares") {
  Rng r(5);
  MatrixExpr w = random_matrix(r, 3, {1, 0}, 4);
  MatrixExpr v = random_matrix(r, 3, {0, 1}, 5);
  MatrixExpr f = random_matrix(r, 3, {0, 0}, 6);
  CHECK(graded_commutator(w, w) == Rational(2) * (w * w));
  CHECK(graded_commutator(w, v) == graded_commutator(v, w));  // both odd
  CHECK(graded_commutator(f, w) == -graded_commutator(w, f));
  CHECK(graded_commutator(f, f).is_zero());
  CHECK(MatrixExpr::identity(3) * w == w);
  MatrixExpr a(1, 1);
  a.at(0, 0) = Expr::gen(field("A", {0})) * Expr::gen(dx(0)) + Expr::gen(field("A", {1})) * Expr::gen(dx(1));
  CHECK((a * a).is_zero());
}

TEST_CASE("derivations obey the graded Leibniz rule on matrix products") {
  Rng r(9);
  ExteriorD d(2);
  for (auto [ba, bb] : {std::pair<Bidegree, Bidegree>{{1, 0}, {0, 1}}, {{0, 0}, {1, 0}}, {{1, 1}, {0, 0}}}) {
    MatrixExpr a = random_matrix(r, 2, ba, 7), b = random_matrix(r, 2, bb, 8);
    MatrixExpr lhs = (a * b).apply(d);
    MatrixExpr rhs = a.apply(d) * b + sign(ba.odd()) * (a * b.apply(d));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("template membership is closed under the commutator") {
  CHECK_THROWS_AS(LieTemplate::build("mobius", 2, EtaMetric::minkowski(2)), DimensionError);
  for (int m : {3, 4, 5}) {
    EtaMetric eta = EtaMetric::minkowski(m);
    auto mob = LieTemplate::build("mobius", m, eta);
    auto poi = LieTemplate::build("poincare", m, eta);
    Rng r(static_cast<std::uint64_t>(100 + m));
    for (int k = 0; k < 20; ++k) {
      MatrixExpr X = mobius_member(r, eta), Y = mobius_member(r, eta);
      REQUIRE(mob.is_member(X));
      auto viol = mob.violations(graded_commutator(X, Y));
      INFO(m << " " << (viol.empty() ? "" : viol[0]) << "\n" << pretty_print(X) << "\n" << pretty_print(Y));
      CHECK(viol.empty());
      MatrixExpr P = poincare_member(r, eta), Q = poincare_member(r, eta);
      REQUIRE(poi.is_member(P));
      CHECK(poi.is_member(graded_commutator(P, Q)));
    }
    MatrixExpr bad = MatrixExpr::identity(m + 2);
    CHECK_FALSE(mob.is_member(bad));
  }
}

TEST_CASE("Mobius sectors are graded") {
  EtaMetric eta = EtaMetric::minkowski(3);
  auto mob = LieTemplate::build("mobius", 3, eta);
  Rng r(3);
  const char* sectors[] = {"g-1", "g0", "g1"};
  for (int k = 0; k < 5; ++k) {
    MatrixExpr X = mobius_member(r, eta), Y = mobius_member(r, eta);
    for (const char* si : sectors)
      for (const char* sj : sectors) {
        MatrixExpr xi = sector_project(X, mob, si), yj = sector_project(Y, mob, sj);
        CHECK(mob.is_member(xi));
        MatrixExpr c = graded_commutator(xi, yj);
        int deg = *LieTemplate::sector_degree(si) + *LieTemplate::sector_degree(sj);
        INFO(si << " " << sj);
        if (deg < -1 || deg > 1) {
          CHECK(c.is_zero());
        } else {
          std::string target = deg == -1 ? "g-1" : deg == 0 ? "g0" : "g1";
          CHECK(sector_project(c, mob, target) == c);
        }
      }
  }
  CHECK(sector_project(MatrixExpr(5, 5), mob, "g1").is_zero());
}

TEST_CASE("eta transpose is an involution on unit vectors") {
  for (int m = 1; m <= 4; ++m) {
    EtaMetric eta = EtaMetric::minkowski(m);
    for (int k = 0; k < m; ++k) {
      MatrixExpr row(1, m), col(m, 1);
      row.at(0, k) = Expr::constant(1);
      col.at(k, 0) = Expr::constant(1);
      CHECK(eta_transpose(eta_transpose(row, eta), eta) == row);
      CHECK(eta_transpose(eta_transpose(col, eta), eta) == col);
    }
    CHECK(eta_transpose(MatrixExpr(1, m), eta).is_zero());
    MatrixExpr row(1, m);
    for (int k = 0; k < m; ++k) row.at(0, k) = Expr::constant(k + 1);
    CHECK(eta_transpose(row, EtaMetric::euclidean(m)) == row.transpose());
  }
}
