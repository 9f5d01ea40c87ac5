#include "brst/gr.hpp"

#include "brst/geometry_common.hpp"

namespace brst {

namespace {
std::size_t z(int i) { return static_cast<std::size_t>(i); }
}  // namespace

GrScene build_gr_scene(int m) {
  if (m < 2) throw DimensionError("gr needs m >= 2");
  GrScene gr;
  gr.eta = EtaMetric::minkowski(m);
  int n = m + 1;
  MatrixExpr varpi(n, n), v(n, n);
  varpi.set_block(0, 0, lorentz_matrix("w", m, gr.eta, true));
  varpi.set_block(0, m, vielbein_form(m));
  v.set_block(0, 0, lorentz_matrix("l", m, gr.eta, false));
  BrstScene base = define_scene("gr", m, varpi.set_tag("poincare"), v);
  base.tmpl = LieTemplate::build("poincare", m, gr.eta);
  gr.scene = shift_algebra(base);
  MatrixExpr u = MatrixExpr::identity(n), U = MatrixExpr::identity(n);
  u.set_block(0, 0, vielbein(m));
  U.set_block(0, 0, vielbein_inverse(m));
  gr.u = {"vielbein", leaf(u), leaf(U)};
  gr.dressed = dress_algebra(gr.scene, gr.u);
  TermPtr e = leaf(vielbein(m));
  gr.metric = transpose(e) * leaf(gr.eta.matrix()) * e;
  return gr;
}

GrPoint::GrPoint(std::uint64_t seed, int m, const EtaMetric& eta, int degree)
    : JetPoint(seed, m, std::max(degree, 3)), eta_(eta) {
  seed_vielbein(*this, degree, "e");
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int mu = 0; mu < m; ++mu)
        set_field("w", {a, b, mu}, random_polynomial(sp_, degree, seed, "w" + std::to_string(a) + "." + std::to_string(b) + "." + std::to_string(mu)), kExactSeries);
}

void GrPoint::build() {
  if (built_) return;
  int m = m_;
  TpsMat e = series_matrix(*this, "e", m);
  TpsMat E = inverse(e);
  FormMat A = lorentz_series(*this, "w", eta_);
  gamma_ = TpsTensor(sp_, {true, false, false});
  for (int mu = 0; mu < m; ++mu) {
    TpsMat G = E * A[z(mu)] * e + E * derivative(e, mu);
    for (int r = 0; r < m; ++r)
      for (int n = 0; n < m; ++n) gamma_.at({r, mu, n}) = G[z(r)][z(n)];
  }
  Form2Mat F = curvature_components(A);
  riemann_ = TpsTensor(sp_, {true, false, false, false});
  for (int mu = 0; mu < m; ++mu)
    for (int s = 0; s < m; ++s) {
      TpsMat R = E * F[z(mu)][z(s)] * e;
      for (int r = 0; r < m; ++r)
        for (int n = 0; n < m; ++n) riemann_.at({r, n, mu, s}) = R[z(r)][z(n)];
    }
  torsion_ = TpsTensor(sp_, {true, false, false});
  for (int mu = 0; mu < m; ++mu)
    for (int s = 0; s < m; ++s) {
      // Theta^a_{mu s} = d_mu e^a_s - d_s e^a_mu + A^a_{b,mu} e^b_s - A^a_{b,s} e^b_mu
      TpsMat th = tps_zero(sp_, m, 1);
      for (int a = 0; a < m; ++a) {
        Tps v = e[z(a)][z(s)].derivative(mu) - e[z(a)][z(mu)].derivative(s);
        for (int b = 0; b < m; ++b) v += A[z(mu)][z(a)][z(b)] * e[z(b)][z(s)] - A[z(s)][z(a)][z(b)] * e[z(b)][z(mu)];
        th[z(a)][0] = v;
      }
      TpsMat T = E * th;
      for (int r = 0; r < m; ++r) torsion_.at({r, mu, s}) = T[z(r)][0];
    }
  built_ = true;
}

const TpsTensor& GrPoint::gamma() {
  build();
  return gamma_;
}
const TpsTensor& GrPoint::riemann() {
  build();
  return riemann_;
}
const TpsTensor& GrPoint::torsion() {
  build();
  return torsion_;
}

namespace {

GrPoint& as_gr(TrialPoint& p) { return dynamic_cast<GrPoint&>(p); }

// [[ nabla_nu xi^rho, xi^rho ], [0, 0]]
MatrixExpr v_hat_prime_display(GrPoint& p, int flip) {
  int m = p.m();
  const auto& G = p.gamma();
  MatrixExpr r(m + 1, m + 1);
  for (int rho = 0; rho < m; ++rho) {
    for (int nu = 0; nu < m; ++nu) {
      Expr e = Expr::gen(xi(rho, {nu})) * flip_sign(flip, 0);
      for (int l = 0; l < m; ++l) e += Expr::gen(xi(l)) * Rational(G.at({rho, l, nu}).value() * flip_sign(flip, 1));
      r.at(rho, nu) = e;
    }
    r.at(rho, m) = Expr::gen(xi(rho)) * flip_sign(flip, 2);
  }
  return r;
}

// [[ (L Gamma^rho_{mu nu} + d_mu d_nu xi^rho) dx^mu, 0 ], [0, 0]]
MatrixExpr lie_gamma_display(GrPoint& p, int flip) {
  int m = p.m();
  const auto& G = p.gamma();
  auto L = lie_derivative_components(G, flip);
  MatrixExpr r(m + 1, m + 1);
  for (int rho = 0; rho < m; ++rho)
    for (int nu = 0; nu < m; ++nu) {
      std::vector<Expr> c;
      for (int mu = 0; mu < m; ++mu)
        c.push_back(L[G.offset({rho, mu, nu})] + Expr::gen(xi(rho, {mu, nu})) * flip_sign(flip, 4));
      r.at(rho, nu) = one_form(c);
    }
  return r;
}

MatrixExpr lie_riemann_display(GrPoint& p, int flip) {
  int m = p.m();
  const auto& R = p.riemann();
  auto L = lie_derivative_components(R, flip);
  MatrixExpr r(m, m);
  for (int rho = 0; rho < m; ++rho)
    for (int nu = 0; nu < m; ++nu) {
      std::vector<std::vector<Expr>> X(z(m), std::vector<Expr>(z(m)));
      for (int mu = 0; mu < m; ++mu)
        for (int s = 0; s < m; ++s) X[z(mu)][z(s)] = L[R.offset({rho, nu, mu, s})];
      r.at(rho, nu) = two_form(X);
    }
  return r;
}

MatrixExpr lie_torsion_display(GrPoint& p, int flip) {
  int m = p.m();
  const auto& T = p.torsion();
  auto L = lie_derivative_components(T, flip);
  MatrixExpr r(m, 1);
  for (int rho = 0; rho < m; ++rho) {
    std::vector<std::vector<Expr>> X(z(m), std::vector<Expr>(z(m)));
    for (int mu = 0; mu < m; ++mu)
      for (int s = 0; s < m; ++s) X[z(mu)][z(s)] = L[T.offset({rho, mu, s})];
    r.at(rho, 0) = two_form(X);
  }
  return r;
}

}  // namespace

Suite gr_suite(const GrScene& gr) {
  Suite suite;
  const BrstScene& sc = gr.scene;
  int m = sc.m;
  suite.key = "gr/m=" + std::to_string(m);
  suite.header = {
      "Poincare Cartan connection, vielbein dressing u = diag(e, 1), eta = diag(-1, 1, ..., 1)",
      "Gamma^rho_{mu nu} is the dx^mu coefficient of entry (rho, nu); R = 1/2 R^rho_{nu, mu sigma} dx^mu dx^sigma",
      "sigma on the composite ghost is redundant with sigma on the composite connection and is checked anyway",
  };
  EtaMetric eta = gr.eta;
  suite.factory = [m, eta](std::uint64_t seed) { return std::make_shared<GrPoint>(seed, m, eta); };
  BrstScene scc = sc;
  suite.extra.push_back({"gr.nilpotency.s", [scc] { return check_nilpotency(scc, "s", "gr.nilpotency.s", "Lorentz BRST algebra"); }});
  suite.extra.push_back({"gr.nilpotency.sigma", [scc] { return check_nilpotency(scc, "sigma", "gr.nilpotency.sigma", "shifted algebra"); }});
  GrScene g = gr;
  suite.identities = [g](const SuiteOptions& o) {
    const BrstScene& sc = g.scene;
    const auto& D = g.dressed;
    int m = sc.m, n = m + 1;
    TermPtr vxi = sc.v_xi_embedded(0);
    TermPtr ixw = sc.i_xi(D.varpi);
    auto oracle = [&](const std::string& id, MatrixExpr (*fn)(GrPoint&, int)) -> OracleSide {
      int flip = fault_term(o.fault, id);
      return [fn, flip](TrialPoint& p) { return fn(as_gr(p), flip); };
    };
    TermPtr sigma_omega = sc.Sigma(D.omega);
    std::vector<Identity> ids;
    ids.push_back({"gr.metric_invariance", "Lorentz invariance of the metric", sc.S(g.metric), zero_term(m, m), {}, ""});
    ids.push_back({"gr.v_hat_zero", "composite Lorentz ghost vanishes", D.ghost, zero_term(n, n), {}, ""});
    ids.push_back({"gr.v_hat_prime.decomposition", "composite shifted ghost", D.ghost_prime, D.ghost + ixw + vxi, {}, ""});
    ids.push_back({"gr.v_hat_prime", "composite shifted Lorentz ghost", D.ghost_prime, nullptr,
                   oracle("gr.v_hat_prime", v_hat_prime_display), "entries (nabla_nu xi^rho, xi^rho)", 3});
    ids.push_back({"gr.sigma_varpi_hat", "shifted composite connection", sc.Sigma(D.varpi),
                   sc.lie(D.varpi) - commutator(D.varpi, vxi) - sc.d(vxi), {}, ""});
    ids.push_back({"gr.bianchi", "Bianchi identity", sc.d(D.omega) + commutator(D.varpi, D.omega), zero_term(n, n), {}, ""});
    ids.push_back({"gr.sigma_omega_hat", "shifted composite curvature", sigma_omega,
                   sc.lie(D.omega) + commutator(D.omega, vxi), {}, ""});
    ids.push_back({"gr.lie_gamma", "Lie derivative of the Christoffel symbols", sc.Sigma(D.varpi), nullptr,
                   oracle("gr.lie_gamma", lie_gamma_display), "display terms: transport, rho, mu, nu slots, d d xi", 5});
    ids.push_back({"gr.lie_riemann", "Lie derivative of the Riemann tensor", block(sigma_omega, 0, 0, m, m), nullptr,
                   oracle("gr.lie_riemann", lie_riemann_display), "", 5});
    ids.push_back({"gr.lie_torsion", "Lie derivative of the torsion tensor", block(sigma_omega, 0, m, m, 1), nullptr,
                   oracle("gr.lie_torsion", lie_torsion_display), "", 4});
    TermPtr vxi_sq = vxi * vxi;  // 1/2 [v_xi, v_xi]
    ids.push_back({"gr.sigma_v_hat_prime", "shifted composite ghost", sc.Sigma(D.ghost_prime),
                   sc.lie(ixw) - commutator(ixw, vxi) + sc.lie(vxi) - vxi_sq - sc.i_xi(sc.d(vxi)) -
                       brst::apply(sc.i_half_bracket, D.varpi),
                   {}, "redundant with the composite connection rule"});
    ids.push_back({"gr.sigma_v_hat_prime.first", "shifted composite ghost", sc.Sigma(D.ghost_prime),
                   -(D.ghost_prime * D.ghost_prime) + Rational(1, 2) * sc.i_xi(sc.i_xi(D.omega)), {}, ""});
    return ids;
  };
  return suite;
}

std::vector<IdentityReport> verify_gr_suite(const GrScene& gr, const SuiteOptions& opts) {
  return run_suite(gr_suite(gr), opts);
}

}  // namespace brst
