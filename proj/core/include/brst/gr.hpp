#pragma once

#include "brst/oracle.hpp"
#include "brst/scene.hpp"
#include "brst/suite.hpp"

namespace brst {

/// Poincare Cartan geometry with vielbein dressing u = diag(e, 1).
struct GrScene {
  BrstScene scene;  // shifted
  EtaMetric eta;
  Dressing u;
  DressedAlgebra dressed;
  TermPtr metric;  // e^T eta e
};

GrScene build_gr_scene(int m);

/// Random polynomial vielbein and Lorentz connection; oracle-side geometry
/// (Gamma = e^-1 A e + e^-1 de, R = e^-1 F e, T = e^-1 Theta) from the series.
class GrPoint : public JetPoint {
 public:
  GrPoint(std::uint64_t seed, int m, const EtaMetric& eta, int degree = 3);

  const TpsTensor& gamma();    // Gamma^rho_{mu nu}
  const TpsTensor& riemann();  // R^rho_{nu, mu sigma}
  const TpsTensor& torsion();  // T^rho_{mu sigma}

 private:
  void build();
  EtaMetric eta_;
  bool built_ = false;
  TpsTensor gamma_, riemann_, torsion_;
};

Suite gr_suite(const GrScene& gr);
std::vector<IdentityReport> verify_gr_suite(const GrScene& gr, const SuiteOptions& opts);

}  // namespace brst
