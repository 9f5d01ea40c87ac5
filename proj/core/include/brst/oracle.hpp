#pragma once

#include <map>
#include <string>
#include <vector>

#include "brst/identity.hpp"
#include "brst/tps.hpp"

namespace brst {

/// Tensor with TPS components; slot k is contravariant when upper[k].
struct TpsTensor {
  int m = 0;
  std::vector<bool> upper;
  std::vector<Tps> data;

  TpsTensor() = default;
  TpsTensor(const std::shared_ptr<const TpsSpace>& sp, std::vector<bool> valence);
  int rank() const { return static_cast<int>(upper.size()); }
  Tps& at(const std::vector<int>& idx) { return data[offset(idx)]; }
  const Tps& at(const std::vector<int>& idx) const { return data[offset(idx)]; }
  std::size_t offset(const std::vector<int>& idx) const;
  /// All index tuples in row-major order.
  std::vector<std::vector<int>> indices() const;
};

/// Matrix-valued 1-form: coefficient matrices of dx^mu.
using FormMat = std::vector<TpsMat>;
/// Matrix-valued 2-form X = 1/2 X_{mu sigma} dx^mu dx^sigma, stored [mu][sigma].
using Form2Mat = std::vector<std::vector<TpsMat>>;

/// u^{-1} w u + u^{-1} du.
FormMat gauge_transform(const FormMat& w, const TpsMat& u, const TpsMat& u_inv);
/// dw + w w as antisymmetric components.
Form2Mat curvature_components(const FormMat& w);

/// Levi-Civita pipeline from metric jets.
struct MetricGeometry {
  int m = 0;
  TpsMat g, g_inv;
  TpsTensor gamma;    // Gamma^rho_{mu nu}: coefficient of dx^mu in entry (rho, nu)
  TpsTensor riemann;  // R^rho_{nu, mu sigma}
  TpsTensor ricci;    // R_{nu sigma} = R^mu_{nu, mu sigma}
  Tps scalar;
  TpsTensor schouten;  // -1/(m-2) (Ric - R g / (2(m-1)))
  TpsTensor weyl;      // W^rho_{nu, mu sigma}, trace-free part of Riemann
  TpsTensor cotton;    // C_{nu, mu sigma} = nabla_mu P_{sigma nu} - nabla_sigma P_{mu nu}
};

/// Requires order >= 3 for P, >= 4 for first derivatives of C.
MetricGeometry metric_geometry(const TpsMat& g);
/// Riemann tensor of an arbitrary affine connection with the same index reading.
TpsTensor riemann_of(const TpsTensor& gamma);

/// Component values of the tensor Lie derivative along the odd ghost xi:
/// xi^a d_a T + sum over lower slots T_{..a..} d_b xi^a - sum over upper
/// slots d_a xi^r T^{..a..}. Term k (0 = transport, then slots in order)
/// has its sign flipped when k == flip.
std::vector<Expr> lie_derivative_components(const TpsTensor& T, int flip = -1);

/// Expr for sum_mu c_mu dx^mu with c_mu placed left of dx.
Expr one_form(const std::vector<Expr>& c);
/// Expr for 1/2 sum X_{mu sigma} dx^mu dx^sigma.
Expr two_form(const std::vector<std::vector<Expr>>& X);

/// Deterministic random polynomial of total degree <= degree.
Tps random_polynomial(const std::shared_ptr<const TpsSpace>& sp, int degree,
                      std::uint64_t seed, const std::string& key);

/// Trial point whose even generators are jets at the origin of explicit
/// power series; inverse generators are exact inverses of their sources.
class JetPoint : public TrialPoint {
 public:
  JetPoint(std::uint64_t seed, int m, int order);

  const std::shared_ptr<const TpsSpace>& space() const { return sp_; }
  int m() const { return m_; }
  /// `valid` is the highest jet order the series determines exactly.
  void set_field(const std::string& name, const std::vector<int>& idx, Tps t, int valid);
  const Tps& field_series(const std::string& name, const std::vector<int>& idx) const;
  bool has_field(const std::string& name, const std::vector<int>& idx) const;

  const Rational* value(GenId g) override;
  std::string describe() const override;

 protected:
  std::shared_ptr<const TpsSpace> sp_;
  int m_;

 private:
  struct Slot {
    Tps series;
    int valid;
  };
  std::map<std::pair<std::string, std::vector<int>>, Slot> fields_;
  std::map<GenId, Rational> cache_;
};

}  // namespace brst
