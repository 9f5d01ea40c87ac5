#pragma once

#include "brst/oracle.hpp"
#include "brst/scene.hpp"
#include "brst/suite.hpp"

namespace brst {

/// Mobius Cartan connection [[a, alpha, 0], [theta, A, alpha^t], [0, theta^t, -a]]
/// with ghost v = v_W + v_L + v_i, dressed by u1 (from q = a.e^-1) and u0 = diag(1, e, 1).
struct ConformalScene {
  BrstScene scene;  // shifted
  EtaMetric eta;
  bool normal = false;  // trial points realise the normal connection
  TermPtr q;            // m-row / column embedding of q in the g1 sector
  Dressing u1, u0, u;   // u = u1 u0
  DressedAlgebra stage1, single;
  TermPtr two_stage_ghost;  // u0^-1 (v')_1 u0 + u0^-1 sigma u0
  TermPtr metric;           // e^T eta e
};

ConformalScene build_conformal_scene(int m, bool normal);

enum class Stage { Stage1, Stage2, Single };

struct DressingStage {
  Stage stage;
  TermPtr varpi, omega, ghost, ghost_prime;
};

DressingStage dress_conformal(const ConformalScene& cs, Stage stage);

/// Trial point for the conformal scene. Generic points draw a, alpha, e, w
/// as random polynomials. Normal points draw e and a, build the normal
/// dressed connection from the metric g = e^T eta e and read alpha and w off
/// u varpi_0 u^-1 + u d(u^-1).
class ConformalPoint : public JetPoint {
 public:
  ConformalPoint(std::uint64_t seed, int m, const EtaMetric& eta, bool normal, int order = 4);

  bool normal() const { return normal_; }
  /// Metric geometry of g (normal points only).
  const MetricGeometry& metric();
  /// Oracle-side composite connection u^-1 varpi u + u^-1 du per dx^mu.
  const FormMat& varpi0();
  /// Gamma, P and torsion read from varpi0 (any point).
  const TpsTensor& gamma0();
  const TpsTensor& schouten0();  // P_{mu nu}: dx^mu coefficient of entry (0, nu)
  const TpsTensor& torsion0();

 private:
  void build_dressed();
  EtaMetric eta_;
  bool normal_;
  std::optional<MetricGeometry> geom_;
  bool dressed_ = false;
  FormMat varpi0_;
  TpsTensor gamma0_, p0_, t0_;
};

/// Mobius-valued field series (varpi per dx^mu) of a point.
FormMat conformal_connection_series(const JetPoint& p, const EtaMetric& eta);
/// u1 u0 from the series of a and e.
TpsMat conformal_dressing_series(const JetPoint& p, const EtaMetric& eta);

Suite conformal_suite(const ConformalScene& cs);
std::vector<IdentityReport> verify_conformal_suite(const ConformalScene& cs,
                                                   const SuiteOptions& opts);

}  // namespace brst
