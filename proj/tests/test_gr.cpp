#include <doctest.h>

#include <iostream>

#include "brst/gr.hpp"

using namespace brst;

namespace {

void require_all_pass(const std::vector<IdentityReport>& reps) {
  for (const auto& r : reps) {
    INFO(r.identity_id << " tier=" << r.tier << " error=" << r.error << "\n" << r.residual);
    CHECK(r.pass);
  }
}

}  // namespace

TEST_CASE("gr suite holds in two dimensions") {
  auto gr = build_gr_scene(2);
  SuiteOptions o;
  o.trials = 3;
  require_all_pass(verify_gr_suite(gr, o));
}

TEST_CASE("gr suite holds in three dimensions") {
  auto gr = build_gr_scene(3);
  SuiteOptions o;
  o.trials = 2;
  require_all_pass(verify_gr_suite(gr, o));
}

TEST_CASE("gr oracle displays catch a flipped term") {
  auto gr = build_gr_scene(2);
  for (std::string f : {"gr.lie_gamma#4", "gr.lie_gamma#0", "gr.lie_riemann#2", "gr.lie_torsion#1", "gr.v_hat_prime#1"}) {
    SuiteOptions o;
    o.trials = 2;
    o.fault = f;
    o.only = {f.substr(0, f.find('#'))};
    std::string id = f.substr(0, f.find('#'));
    for (const auto& r : verify_gr_suite(gr, o)) {
      if (r.identity_id != id) continue;
      INFO(f);
      CHECK(r.tier == "randomized");
      CHECK_FALSE(r.pass);
    }
  }
}
