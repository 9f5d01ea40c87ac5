#pragma once

#include <memory>
#include <vector>

#include "brst/expr.hpp"

namespace brst {

/// Monomial table for truncated power series in m variables up to order K.
class TpsSpace {
 public:
  static std::shared_ptr<const TpsSpace> get(int m, int order);

  int dim() const { return m_; }
  int order() const { return order_; }
  std::size_t size() const { return exps_.size(); }
  const std::vector<int>& exponent(std::size_t i) const { return exps_[i]; }
  int degree(std::size_t i) const { return degree_[i]; }
  /// Index of an exponent vector; size() when out of range.
  std::size_t find(const std::vector<int>& e) const;

  struct MulEntry {
    std::size_t a, b, out;
  };
  const std::vector<MulEntry>& mul_table() const { return mul_; }
  /// For monomial i: (index of x^e / x_mu, exponent of x_mu in e), or size() if absent.
  std::pair<std::size_t, int> lower(std::size_t i, int mu) const { return lower_[i][static_cast<std::size_t>(mu)]; }

 private:
  TpsSpace(int m, int order);
  int m_, order_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> degree_;
  std::vector<MulEntry> mul_;
  std::vector<std::vector<std::pair<std::size_t, int>>> lower_;
};

/// Truncated power series around the origin with exact rational coefficients.
class Tps {
 public:
  Tps() = default;
  explicit Tps(std::shared_ptr<const TpsSpace> sp);
  static Tps constant(std::shared_ptr<const TpsSpace> sp, const Rational& c);
  static Tps variable(std::shared_ptr<const TpsSpace> sp, int mu);

  const TpsSpace& space() const { return *sp_; }
  const std::shared_ptr<const TpsSpace>& space_ptr() const { return sp_; }
  Rational& coeff(std::size_t i) { return c_[i]; }
  const Rational& coeff(std::size_t i) const { return c_[i]; }
  const Rational& value() const { return c_[0]; }
  bool is_zero() const;

  Tps& operator+=(const Tps& o);
  Tps& operator-=(const Tps& o);
  Tps& operator*=(const Rational& s);
  friend Tps operator+(Tps a, const Tps& b) { return a += b; }
  friend Tps operator-(Tps a, const Tps& b) { return a -= b; }
  friend Tps operator*(Tps a, const Rational& s) { return a *= s; }
  friend Tps operator*(const Rational& s, Tps a) { return a *= s; }
  friend Tps operator*(const Tps& a, const Tps& b);
  Tps operator-() const;

  Tps derivative(int mu) const;
  /// Partial derivative along the multiset `jet` evaluated at the origin.
  Rational jet(const std::vector<int>& jet) const;

 private:
  std::shared_ptr<const TpsSpace> sp_;
  std::vector<Rational> c_;
};

using TpsMat = std::vector<std::vector<Tps>>;

TpsMat tps_zero(const std::shared_ptr<const TpsSpace>& sp, int rows, int cols);
TpsMat tps_identity(const std::shared_ptr<const TpsSpace>& sp, int n);
TpsMat operator*(const TpsMat& a, const TpsMat& b);
TpsMat operator+(const TpsMat& a, const TpsMat& b);
TpsMat operator-(const TpsMat& a, const TpsMat& b);
TpsMat scale(const TpsMat& a, const Rational& s);
TpsMat transpose(const TpsMat& a);
TpsMat derivative(const TpsMat& a, int mu);
/// Inverse via the constant part and a Neumann series; throws when the
/// constant part is singular.
TpsMat inverse(const TpsMat& a);
/// Constant parts as rationals.
std::vector<std::vector<Rational>> values(const TpsMat& a);

/// Exact Gauss-Jordan inverse; false when singular.
bool invert_rational(std::vector<std::vector<Rational>>& a);

}  // namespace brst
