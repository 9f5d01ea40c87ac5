#include <doctest.h>

#include "brst/conformal.hpp"

using namespace brst;

namespace {

const ConformalScene& scene3(bool normal) {
  static const ConformalScene generic = build_conformal_scene(3, false);
  static const ConformalScene norm = build_conformal_scene(3, true);
  return normal ? norm : generic;
}

}  // namespace

TEST_CASE("conformal scene rejects low dimension") {
  CHECK_THROWS_AS(build_conformal_scene(2, false), DimensionError);
}

TEST_CASE("normal points carry a Mobius-valued normal connection") {
  auto eta = EtaMetric::minkowski(3);
  ConformalPoint p(17, 3, eta, true);
  FormMat w = conformal_connection_series(p, eta);
  auto tmpl = LieTemplate::build("mobius", 3, eta);
  for (const auto& wm : w) {
    auto v = values(wm);
    CHECK(tmpl.is_member(MatrixExpr::from_rationals(v)));
  }
  // dressing the constructed connection returns the Riemannian form
  const auto& G = p.metric();
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      CHECK(p.schouten0().at({mu, nu}).value() == G.schouten.at({mu, nu}).value());
      for (int r = 0; r < 3; ++r) CHECK(p.gamma0().at({r, mu, nu}).value() == G.gamma.at({r, mu, nu}).value());
    }
}

TEST_CASE("conformal suite holds at generic points") {
  SuiteOptions o;
  o.trials = 2;
  for (const auto& r : verify_conformal_suite(scene3(false), o)) {
    INFO(r.identity_id << " " << r.error << "\n" << r.residual);
    CHECK(r.pass);
  }
}

TEST_CASE("conformal suite holds at normal points") {
  SuiteOptions o;
  o.trials = 2;
  for (const auto& r : verify_conformal_suite(scene3(true), o)) {
    INFO(r.identity_id << " " << r.error << "\n" << r.residual);
    CHECK(r.pass);
  }
}

TEST_CASE("conformal displays catch a flipped term") {
  struct Case {
    bool normal;
    std::string fault;
  };
  for (const auto& c : {Case{true, "conf.v0_prime.matrix#2"}, Case{true, "conf.v0_prime.matrix#7"},
                        Case{true, "conf.lie_cotton#3"}, Case{true, "conf.lie_schouten#0"},
                        Case{true, "conf.riemannian_parametrization#2"}, Case{false, "conf.nonnormal_torsion#1"},
                        Case{false, "conf.nonnormal_trace#0"}}) {
    SuiteOptions o;
    o.trials = 2;
    o.fault = c.fault;
    std::string id = c.fault.substr(0, c.fault.find('#'));
    o.only = {id};
    bool seen = false;
    for (const auto& r : verify_conformal_suite(scene3(c.normal), o)) {
      if (r.identity_id != id) continue;
      seen = true;
      INFO(c.fault);
      CHECK_FALSE(r.pass);
    }
    CHECK(seen);
  }
}
