#include "brst/ym.hpp"

namespace brst {

YmScene build_ym_scene(int m, int n) {
  if (m < 2 || n < 1) throw DimensionError("yang_mills needs dim >= 2 and size >= 1");
  YmScene ym;
  ym.scene = define_yang_mills(m, n, true);
  ym.shifted = shift_algebra(ym.scene);
  ym.plain = define_formal_dressing(m, n, false, true);
  ym.tensorial = define_formal_dressing(m, m, true, false);
  return ym;
}

namespace {

std::vector<IdentityReport> as_vector(const std::map<Bidegree, IdentityReport>& m) {
  std::vector<IdentityReport> out;
  for (const auto& [b, r] : m) out.push_back(r);
  return out;
}

}  // namespace

Suite ym_suite(const YmScene& ym) {
  Suite suite;
  int m = ym.scene.m, n = ym.scene.n;
  suite.key = "ym/m=" + std::to_string(m) + ",n=" + std::to_string(n);
  suite.header = {
      "gl(n) connection A with ghost v and matter column psi in the fundamental representation",
      "formal dressing field u with inverse U and residual ghost w: s u = -v u + u w",
  };
  suite.factory = [](std::uint64_t seed) { return std::make_shared<RandomJetPoint>(seed); };
  BrstScene sc = ym.scene, sh = ym.shifted, tn = ym.tensorial.scene;
  suite.extra.push_back({"ym.s_nilpotent", [sc] { return check_nilpotency(sc, "s", "ym.s_nilpotent", "BRST operator on the gauge algebra"); }});
  suite.extra.push_back({"ym.sigma_nilpotent", [sh] { return check_nilpotency(sh, "sigma", "ym.sigma_nilpotent", "shifted BRST operator"); }});
  suite.extra.push_back({"ym.abelian_nilpotent", [m] {
                           BrstScene ab = define_yang_mills(m, 1, false);
                           return check_nilpotency(ab, "s", "ym.abelian_nilpotent", "abelian ghost");
                         }});
  suite.extra.push_back({"ym.dressing.tensorial_nilpotent", [tn] {
                           return check_nilpotency(tn, "sigma", "ym.dressing.tensorial_nilpotent", "tensorial dressing field");
                         }});
  suite.batches.push_back({"ym.russian", [sc] {
                             return as_vector(expand_horizontality(sc, Horizontality::Russian, "ym.russian", "Russian formula"));
                           }});
  suite.batches.push_back({"ym.matter", [sc] {
                             return as_vector(expand_horizontality(sc, Horizontality::Matter, "ym.matter", "matter horizontality"));
                           }});
  suite.batches.push_back({"ym.shifted_russian", [sh] {
                             return as_vector(expand_horizontality(sh, Horizontality::ShiftedRussian, "ym.shifted_russian", "shifted Russian formula"));
                           }});
  suite.batches.push_back({"ym.shifted_matter", [sh] {
                             return as_vector(expand_horizontality(sh, Horizontality::ShiftedMatter, "ym.shifted_matter", "shifted matter horizontality"));
                           }});
  YmScene y = ym;
  suite.identities = [y](const SuiteOptions&) {
    const BrstScene& sc = y.shifted;
    int n = sc.n;
    TermPtr A = sc.varpi_t, F = sc.omega_t, v = sc.ghost_t, psi = sc.psi_t;
    TermPtr vp = shifted_ghost(sc);
    std::vector<Identity> ids;
    ids.push_back({"ym.curvature", "curvature of the gauge field", F, sc.d(A) + A * A, {}, ""});
    ids.push_back({"ym.bianchi", "Bianchi identity", sc.covariant(A, F), zero_term(n, n), {}, ""});
    ids.push_back({"ym.s_connection", "BRST algebra of gauge theory", sc.S(A), -sc.covariant(A, v), {}, ""});
    ids.push_back({"ym.s_curvature", "BRST algebra of gauge theory", sc.S(F), commutator(F, v), {}, ""});
    ids.push_back({"ym.s_ghost", "BRST algebra of gauge theory", sc.S(v), -(v * v), {}, ""});
    ids.push_back({"ym.s_matter", "matter horizontality", sc.S(psi), -(v * psi), {}, ""});
    ids.push_back({"ym.presentation.connection", "sigma = s + L_xi", sc.Sigma(A),
                   -sc.covariant(A, vp) + sc.i_xi(F), {}, "sigma from (A, v', xi) against s + L_xi"});
    ids.push_back({"ym.presentation.curvature", "sigma = s + L_xi", sc.Sigma(F),
                   commutator(F, vp) - sc.covariant(A, sc.i_xi(F)), {}, ""});
    ids.push_back({"ym.presentation.shifted_ghost", "sigma = s + L_xi", sc.Sigma(vp),
                   -(vp * vp) + Rational(1, 2) * sc.i_xi(sc.i_xi(F)), {}, ""});
    ids.push_back({"ym.presentation.matter", "sigma = s + L_xi", sc.Sigma(psi),
                   -(vp * psi) + sc.i_xi(sc.d(psi) + A * psi), {}, ""});
    ids.push_back({"ym.presentation.ghost", "sigma = s + L_xi", sc.Sigma(v), sc.S(v) + sc.lie(v), {}, ""});

    const auto& fd = y.plain;
    const BrstScene& ds = fd.scene;
    DressedAlgebra D = dress_algebra(ds, fd.u);
    ids.push_back({"ym.dressing.identity", "composite fields", sc.varpi_t,
                   leaf(MatrixExpr::identity(n)) * sc.varpi_t * leaf(MatrixExpr::identity(n)), {}, "u = 1"});
    ids.push_back({"ym.dressing.s_connection", "dressed BRST algebra", ds.S(D.varpi),
                   -ds.covariant(D.varpi, D.ghost), {}, ""});
    ids.push_back({"ym.dressing.s_curvature", "dressed BRST algebra", ds.S(D.omega), commutator(D.omega, D.ghost), {}, ""});
    ids.push_back({"ym.dressing.curvature", "dressed BRST algebra", D.omega, ds.curvature(D.varpi), {}, ""});
    ids.push_back({"ym.dressing.s_ghost", "dressed BRST algebra", ds.S(D.ghost), -(D.ghost * D.ghost), {}, ""});
    ids.push_back({"ym.dressing.s_matter", "dressed BRST algebra", ds.S(D.psi), -(D.ghost * D.psi), {}, ""});
    ids.push_back({"ym.dressing.obstruction", "commuting shift and dressing", obstruction(ds, fd.u), zero_term(n, n), {}, ""});
    ids.push_back({"ym.dressing.commute", "commuting shift and dressing", D.ghost_prime, D.ghost_hat_shifted, {}, ""});

    const auto& ft = y.tensorial;
    const BrstScene& ts = ft.scene;
    DressedAlgebra T = dress_algebra(ts, ft.u);
    TermPtr vxi = leaf(ts.v_xi);
    ids.push_back({"ym.dressing.tensorial_obstruction", "tensorial dressing field", obstruction(ts, ft.u), ft.u.u * vxi, {}, ""});
    ids.push_back({"ym.dressing.tensorial", "tensorial dressing field", T.ghost_prime, T.ghost_hat_shifted + vxi, {}, ""});
    return ids;
  };
  return suite;
}

std::vector<IdentityReport> verify_ym_suite(const YmScene& ym, const SuiteOptions& opts) {
  return run_suite(ym_suite(ym), opts);
}

}  // namespace brst
