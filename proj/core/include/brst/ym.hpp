#pragma once

#include "brst/scene.hpp"
#include "brst/suite.hpp"

namespace brst {

/// gl(n) gauge theory on m dimensions with matter, its shifted algebra and
/// two formal dressings (sigma u = (s + L_xi) u, and the tensorial one with
/// an extra u v_xi, n = m).
struct YmScene {
  BrstScene scene;    // unshifted, with matter
  BrstScene shifted;
  FormalDressing plain, tensorial;
};

YmScene build_ym_scene(int m, int n);

Suite ym_suite(const YmScene& ym);
std::vector<IdentityReport> verify_ym_suite(const YmScene& ym, const SuiteOptions& opts);

}  // namespace brst
