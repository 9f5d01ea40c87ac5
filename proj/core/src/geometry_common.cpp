#include "brst/geometry_common.hpp"

#include <stdexcept>

namespace brst {

namespace {
std::size_t z(int i) { return static_cast<std::size_t>(i); }
}  // namespace

MatrixExpr lorentz_matrix(const std::string& name, int m, const EtaMetric& eta, bool form) {
  if (eta.dim() != m) throw DimensionError("eta dimension mismatch");
  MatrixExpr r(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Expr x;
      if (form) {
        for (int mu = 0; mu < m; ++mu) x += Expr::gen(field(name, {a, b, mu})) * Expr::gen(dx(mu));
      } else {
        x = Expr::gen(ghost(name, {a, b}));
      }
      Rational ia = 1 / eta.diagonal[z(a)], ib = 1 / eta.diagonal[z(b)];
      r.at(a, b) = x * ia;
      r.at(b, a) = x * Rational(-ib);
    }
  return r;
}

MatrixExpr vielbein(int m, const std::string& name) {
  MatrixExpr r(m, m);
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) r.at(a, mu) = Expr::gen(field(name, {a, mu}));
  return r;
}

MatrixExpr vielbein_form(int m, const std::string& name) {
  MatrixExpr r(m, 1);
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) r.at(a, 0) += Expr::gen(field(name, {a, mu})) * Expr::gen(dx(mu));
  return r;
}

MatrixExpr vielbein_inverse(int m, const std::string& name) {
  std::string inv = (name == "e" ? "E" : name + "_inv") + std::to_string(m);
  register_inverse(inv, name, m);
  MatrixExpr r(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r.at(i, j) = Expr::gen(inverse_component(inv, {i, j}));
  return r;
}

void seed_vielbein(JetPoint& p, int degree, const std::string& name) {
  int m = p.m();
  for (int bump = 7;; bump += 4) {
    TpsMat e = tps_zero(p.space(), m, m);
    for (int a = 0; a < m; ++a)
      for (int mu = 0; mu < m; ++mu) {
        e[z(a)][z(mu)] = random_polynomial(p.space(), degree, p.seed(),
                                           name + std::to_string(a) + "." + std::to_string(mu));
        if (a == mu) e[z(a)][z(mu)].coeff(0) += bump;
      }
    auto v = values(e);
    if (!invert_rational(v)) continue;
    for (int a = 0; a < m; ++a)
      for (int mu = 0; mu < m; ++mu) p.set_field(name, {a, mu}, e[z(a)][z(mu)], kExactSeries);
    return;
  }
}

TpsMat series_matrix(const JetPoint& p, const std::string& name, int m) {
  TpsMat r = tps_zero(p.space(), m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r[z(i)][z(j)] = p.field_series(name, {i, j});
  return r;
}

FormMat lorentz_series(const JetPoint& p, const std::string& name, const EtaMetric& eta) {
  int m = p.m();
  FormMat A(z(m), tps_zero(p.space(), m, m));
  for (int mu = 0; mu < m; ++mu)
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const Tps& x = p.field_series(name, {a, b, mu});
        A[z(mu)][z(a)][z(b)] = x * Rational(1 / eta.diagonal[z(a)]);
        A[z(mu)][z(b)][z(a)] = x * Rational(-1 / eta.diagonal[z(b)]);
      }
  return A;
}

}  // namespace brst
