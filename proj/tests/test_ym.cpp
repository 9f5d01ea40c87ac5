#include <doctest.h>

#include "brst/ym.hpp"

using namespace brst;

TEST_CASE("yang-mills suite holds symbolically") {
  for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 3}}) {
    auto ym = build_ym_scene(m, n);
    SuiteOptions o;
    auto reps = verify_ym_suite(ym, o);
    CHECK(reps.size() > 30);
    for (const auto& r : reps) {
      INFO(m << "x" << n << " " << r.identity_id << " " << r.error << "\n" << r.residual);
      CHECK(r.pass);
      // dressed rules carry U u products on both sides and may need exact evaluation
      if (r.identity_id.rfind("ym.dressing.s_", 0) != 0 && r.identity_id != "ym.dressing.curvature")
        CHECK(r.tier == "symbolic");
    }
  }
}

TEST_CASE("yang-mills only filter reaches batched expansions") {
  auto ym = build_ym_scene(2, 2);
  SuiteOptions o;
  o.only = {"ym.russian.(1,1)"};
  auto reps = verify_ym_suite(ym, o);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].identity_id == "ym.russian.(1,1)");
}
