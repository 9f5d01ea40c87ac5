#include "brst/tps.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace brst {

namespace {

void enumerate(int m, int order, std::vector<int>& cur, int var, int left,
               std::vector<std::vector<int>>& out) {
  if (var == m) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= left; ++k) {
    cur[static_cast<std::size_t>(var)] = k;
    enumerate(m, order, cur, var + 1, left - k, out);
  }
  cur[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

TpsSpace::TpsSpace(int m, int order) : m_(m), order_(order) {
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<int>> all;
  enumerate(m, order, cur, 0, order, all);
  // graded order so that index 0 is the constant term
  for (int d = 0; d <= order; ++d)
    for (auto& e : all) {
      int s = 0;
      for (int x : e) s += x;
      if (s == d) {
        exps_.push_back(e);
        degree_.push_back(d);
      }
    }
  for (std::size_t i = 0; i < exps_.size(); ++i)
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (degree_[i] + degree_[j] > order) continue;
      std::vector<int> e = exps_[i];
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += exps_[j][k];
      mul_.push_back({i, j, find(e)});
    }
  lower_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i)
    for (int mu = 0; mu < m; ++mu) {
      int p = exps_[i][static_cast<std::size_t>(mu)];
      if (p == 0) {
        lower_[i].push_back({exps_.size(), 0});
        continue;
      }
      std::vector<int> e = exps_[i];
      --e[static_cast<std::size_t>(mu)];
      lower_[i].push_back({find(e), p});
    }
}

std::size_t TpsSpace::find(const std::vector<int>& e) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] == e) return i;
  return exps_.size();
}

std::shared_ptr<const TpsSpace> TpsSpace::get(int m, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const TpsSpace>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{m, order}];
  if (!slot) slot = std::shared_ptr<const TpsSpace>(new TpsSpace(m, order));
  return slot;
}

Tps::Tps(std::shared_ptr<const TpsSpace> sp) : sp_(std::move(sp)), c_(sp_->size(), Rational(0)) {}

Tps Tps::constant(std::shared_ptr<const TpsSpace> sp, const Rational& c) {
  Tps t(std::move(sp));
  t.c_[0] = c;
  return t;
}

Tps Tps::variable(std::shared_ptr<const TpsSpace> sp, int mu) {
  Tps t(sp);
  std::vector<int> e(static_cast<std::size_t>(sp->dim()), 0);
  e[static_cast<std::size_t>(mu)] = 1;
  if (sp->order() >= 1) t.c_[sp->find(e)] = 1;
  return t;
}

bool Tps::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

Tps& Tps::operator+=(const Tps& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Tps& Tps::operator-=(const Tps& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Tps& Tps::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Tps Tps::operator-() const {
  Tps r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Tps operator*(const Tps& a, const Tps& b) {
  Tps r(a.sp_);
  for (const auto& e : a.sp_->mul_table()) {
    const Rational& x = a.c_[e.a];
    if (x == 0) continue;
    const Rational& y = b.c_[e.b];
    if (y == 0) continue;
    r.c_[e.out] += x * y;
  }
  return r;
}

Tps Tps::derivative(int mu) const {
  Tps r(sp_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    auto [j, p] = sp_->lower(i, mu);
    if (p) r.c_[j] += c_[i] * p;
  }
  return r;
}

Rational Tps::jet(const std::vector<int>& jet) const {
  std::vector<int> e(static_cast<std::size_t>(sp_->dim()), 0);
  for (int mu : jet) ++e[static_cast<std::size_t>(mu)];
  std::size_t i = sp_->find(e);
  if (i == sp_->size()) return 0;
  Rational r = c_[i];
  for (int p : e)
    for (int k = 2; k <= p; ++k) r *= k;
  return r;
}

TpsMat tps_zero(const std::shared_ptr<const TpsSpace>& sp, int rows, int cols) {
  return TpsMat(static_cast<std::size_t>(rows), std::vector<Tps>(static_cast<std::size_t>(cols), Tps(sp)));
}

TpsMat tps_identity(const std::shared_ptr<const TpsSpace>& sp, int n) {
  TpsMat r = tps_zero(sp, n, n);
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)].coeff(0) = 1;
  return r;
}

TpsMat operator*(const TpsMat& a, const TpsMat& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size()) throw std::invalid_argument("tps matrix shapes");
  const auto& sp = b[0][0].space_ptr();
  TpsMat r = tps_zero(sp, static_cast<int>(a.size()), static_cast<int>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

TpsMat operator+(const TpsMat& a, const TpsMat& b) {
  TpsMat r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] += b[i][j];
  return r;
}

TpsMat operator-(const TpsMat& a, const TpsMat& b) {
  TpsMat r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

TpsMat scale(const TpsMat& a, const Rational& s) {
  TpsMat r = a;
  for (auto& row : r)
    for (auto& x : row) x *= s;
  return r;
}

TpsMat transpose(const TpsMat& a) {
  TpsMat r(a[0].size(), std::vector<Tps>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

TpsMat derivative(const TpsMat& a, int mu) {
  TpsMat r = a;
  for (auto& row : r)
    for (auto& x : row) x = x.derivative(mu);
  return r;
}

std::vector<std::vector<Rational>> values(const TpsMat& a) {
  std::vector<std::vector<Rational>> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& x : a[i]) r[i].push_back(x.value());
  return r;
}

bool invert_rational(std::vector<std::vector<Rational>>& a) {
  auto n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return false;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  a = std::move(inv);
  return true;
}

TpsMat inverse(const TpsMat& a) {
  const auto& sp = a[0][0].space_ptr();
  int n = static_cast<int>(a.size());
  auto c = values(a);
  if (!invert_rational(c)) throw std::domain_error("singular matrix at the expansion point");
  TpsMat c0 = tps_zero(sp, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].coeff(0) = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  // a = a0 (1 + N) with N = a0^{-1} (a - a0) nilpotent up to the order
  TpsMat nil = c0 * a - tps_identity(sp, n);
  TpsMat term = tps_identity(sp, n), sum = tps_identity(sp, n);
  for (int k = 1; k <= sp->order(); ++k) {
    term = scale(term * nil, -1);
    sum = sum + term;
  }
  return sum * c0;
}

}  // namespace brst
