#include "brst/oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace brst {

TpsTensor::TpsTensor(const std::shared_ptr<const TpsSpace>& sp, std::vector<bool> valence)
    : m(sp->dim()), upper(std::move(valence)) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < upper.size(); ++k) n *= static_cast<std::size_t>(m);
  data.assign(n, Tps(sp));
}

std::size_t TpsTensor::offset(const std::vector<int>& idx) const {
  if (idx.size() != upper.size()) throw std::invalid_argument("tensor valence mismatch");
  std::size_t o = 0;
  for (int i : idx) o = o * static_cast<std::size_t>(m) + static_cast<std::size_t>(i);
  return o;
}

std::vector<std::vector<int>> TpsTensor::indices() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(upper.size(), 0);
  for (std::size_t n = 0; n < data.size(); ++n) {
    out.push_back(cur);
    for (std::size_t k = cur.size(); k-- > 0;) {
      if (++cur[k] < m) break;
      cur[k] = 0;
    }
  }
  return out;
}

FormMat gauge_transform(const FormMat& w, const TpsMat& u, const TpsMat& u_inv) {
  FormMat r;
  for (std::size_t mu = 0; mu < w.size(); ++mu)
    r.push_back(u_inv * w[mu] * u + u_inv * derivative(u, static_cast<int>(mu)));
  return r;
}

Form2Mat curvature_components(const FormMat& w) {
  std::size_t m = w.size();
  Form2Mat X(m, std::vector<TpsMat>(m));
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t s = 0; s < m; ++s)
      X[mu][s] = derivative(w[s], static_cast<int>(mu)) - derivative(w[mu], static_cast<int>(s)) +
                 w[mu] * w[s] - w[s] * w[mu];
  return X;
}

TpsTensor riemann_of(const TpsTensor& G) {
  const auto& sp = G.data[0].space_ptr();
  int m = G.m;
  TpsTensor R(sp, {true, false, false, false});
  for (int r = 0; r < m; ++r)
    for (int n = 0; n < m; ++n)
      for (int mu = 0; mu < m; ++mu)
        for (int s = 0; s < m; ++s) {
          Tps v = G.at({r, s, n}).derivative(mu) - G.at({r, mu, n}).derivative(s);
          for (int l = 0; l < m; ++l) v += G.at({r, mu, l}) * G.at({l, s, n}) - G.at({r, s, l}) * G.at({l, mu, n});
          R.at({r, n, mu, s}) = v;
        }
  return R;
}

MetricGeometry metric_geometry(const TpsMat& g) {
  MetricGeometry G;
  const auto& sp = g[0][0].space_ptr();
  int m = static_cast<int>(g.size());
  auto u = [](int i) { return static_cast<std::size_t>(i); };
  G.m = m;
  G.g = g;
  G.g_inv = inverse(g);
  std::vector<TpsMat> dg;
  for (int l = 0; l < m; ++l) dg.push_back(derivative(g, l));
  G.gamma = TpsTensor(sp, {true, false, false});
  for (int r = 0; r < m; ++r)
    for (int mu = 0; mu < m; ++mu)
      for (int n = 0; n < m; ++n) {
        Tps v(sp);
        for (int l = 0; l < m; ++l)
          v += G.g_inv[u(r)][u(l)] * (dg[u(mu)][u(l)][u(n)] + dg[u(n)][u(l)][u(mu)] - dg[u(l)][u(mu)][u(n)]);
        G.gamma.at({r, mu, n}) = v * Rational(1, 2);
      }
  G.riemann = riemann_of(G.gamma);
  G.ricci = TpsTensor(sp, {false, false});
  G.scalar = Tps(sp);
  for (int n = 0; n < m; ++n)
    for (int s = 0; s < m; ++s) {
      Tps v(sp);
      for (int mu = 0; mu < m; ++mu) v += G.riemann.at({mu, n, mu, s});
      G.ricci.at({n, s}) = v;
      G.scalar += G.g_inv[u(n)][u(s)] * v;
    }
  if (m < 3) return G;
  Rational inv_m2 = Rational(1) / (m - 2);
  Rational half_m1 = Rational(1) / (2 * (m - 1));
  G.schouten = TpsTensor(sp, {false, false});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      G.schouten.at({a, b}) = -inv_m2 * (G.ricci.at({a, b}) - half_m1 * (G.scalar * g[u(a)][u(b)]));
  // Ric^rho_mu = g^{rho l} Ric_{l mu}
  TpsTensor ric_up(sp, {true, false});
  for (int r = 0; r < m; ++r)
    for (int mu = 0; mu < m; ++mu) {
      Tps v(sp);
      for (int l = 0; l < m; ++l) v += G.g_inv[u(r)][u(l)] * G.ricci.at({l, mu});
      ric_up.at({r, mu}) = v;
    }
  Rational kr = Rational(1) / ((m - 1) * (m - 2));
  G.weyl = TpsTensor(sp, {true, false, false, false});
  for (int r = 0; r < m; ++r)
    for (int n = 0; n < m; ++n)
      for (int mu = 0; mu < m; ++mu)
        for (int s = 0; s < m; ++s) {
          Tps v = G.riemann.at({r, n, mu, s});
          Tps ricci_part(sp), scalar_part(sp);
          if (r == mu) {
            ricci_part += G.ricci.at({s, n});
            scalar_part += g[u(s)][u(n)];
          }
          if (r == s) {
            ricci_part -= G.ricci.at({mu, n});
            scalar_part -= g[u(mu)][u(n)];
          }
          ricci_part += ric_up.at({r, mu}) * g[u(s)][u(n)] - ric_up.at({r, s}) * g[u(mu)][u(n)];
          v -= inv_m2 * ricci_part;
          v += kr * (G.scalar * scalar_part);
          G.weyl.at({r, n, mu, s}) = v;
        }
  // nabla_mu P_{s n}
  auto nabla_P = [&](int mu, int s, int n) {
    Tps v = G.schouten.at({s, n}).derivative(mu);
    for (int l = 0; l < m; ++l)
      v -= G.gamma.at({l, mu, s}) * G.schouten.at({l, n}) + G.gamma.at({l, mu, n}) * G.schouten.at({s, l});
    return v;
  };
  G.cotton = TpsTensor(sp, {false, false, false});
  for (int n = 0; n < m; ++n)
    for (int mu = 0; mu < m; ++mu)
      for (int s = 0; s < m; ++s) G.cotton.at({n, mu, s}) = nabla_P(mu, s, n) - nabla_P(s, mu, n);
  return G;
}

std::vector<Expr> lie_derivative_components(const TpsTensor& T, int flip) {
  std::vector<Expr> out;
  int m = T.m;
  auto sign = [&](int k) { return Rational(k == flip ? -1 : 1); };
  for (const auto& I : T.indices()) {
    Expr e;
    for (int a = 0; a < m; ++a) {
      Rational c = T.at(I).derivative(a).value();
      if (c != 0) e += Expr::gen(xi(a)) * Expr(c * sign(0));
    }
    for (int k = 0; k < T.rank(); ++k) {
      auto J = I;
      for (int a = 0; a < m; ++a) {
        J[static_cast<std::size_t>(k)] = a;
        Rational c = T.at(J).value();
        if (c == 0) continue;
        int free = I[static_cast<std::size_t>(k)];
        if (T.upper[static_cast<std::size_t>(k)])
          e -= Expr::gen(xi(free, {a})) * Expr(c * sign(k + 1));
        else
          e += Expr::gen(xi(a, {free})) * Expr(c * sign(k + 1));
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

Expr one_form(const std::vector<Expr>& c) {
  Expr e;
  for (std::size_t mu = 0; mu < c.size(); ++mu) e += c[mu] * Expr::gen(dx(static_cast<int>(mu)));
  return e;
}

Expr two_form(const std::vector<std::vector<Expr>>& X) {
  Expr e;
  for (std::size_t mu = 0; mu < X.size(); ++mu)
    for (std::size_t s = 0; s < X.size(); ++s)
      if (mu != s) e += X[mu][s] * Expr::gen(dx(static_cast<int>(mu))) * Expr::gen(dx(static_cast<int>(s)));
  return e * Rational(1, 2);
}

Tps random_polynomial(const std::shared_ptr<const TpsSpace>& sp, int degree,
                      std::uint64_t seed, const std::string& key) {
  static const long nums[] = {-3, -2, -1, 1, 2, 3, 5, -5};
  static const long dens[] = {1, 1, 2, 3, 1, 4};
  Tps t(sp);
  std::uint64_t base = mix_seed(seed, hash_string(key));
  for (std::size_t i = 0; i < sp->size(); ++i) {
    if (sp->degree(i) > degree) continue;
    std::uint64_t h = mix_seed(base, i);
    t.coeff(i) = make_rational(nums[h % 8], dens[(h / 8) % 6]);
  }
  return t;
}

JetPoint::JetPoint(std::uint64_t seed, int m, int order)
    : TrialPoint(seed), sp_(TpsSpace::get(m, order)), m_(m) {}

void JetPoint::set_field(const std::string& name, const std::vector<int>& idx, Tps t, int valid) {
  fields_[{name, idx}] = Slot{std::move(t), valid};
}

bool JetPoint::has_field(const std::string& name, const std::vector<int>& idx) const {
  return fields_.count({name, idx}) != 0;
}

const Tps& JetPoint::field_series(const std::string& name, const std::vector<int>& idx) const {
  auto it = fields_.find({name, idx});
  if (it == fields_.end()) throw std::out_of_range("oracle has no field " + name);
  return it->second.series;
}

const Rational* JetPoint::value(GenId g) {
  if (auto it = cache_.find(g); it != cache_.end()) return &it->second;
  const auto& gen = generator(g);
  if (gen.odd()) return nullptr;
  if (gen.key.kind == GenKind::Inverse) {
    auto [src, n] = inverse_source(gen.key.name);
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)].push_back(field_series(src, {i, j}).value());
    if (!invert_rational(a)) throw std::domain_error("oracle matrix " + src + " is singular");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        cache_[inverse_component(gen.key.name, {i, j})] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return &cache_.at(g);
  }
  auto it = fields_.find({gen.key.name, gen.key.indices});
  if (it == fields_.end()) throw std::out_of_range("unmapped generator " + render(g));
  if (static_cast<int>(gen.key.jet.size()) > it->second.valid)
    throw std::out_of_range("jet of " + render(g) + " beyond oracle order");
  return &cache_.emplace(g, it->second.series.jet(gen.key.jet)).first->second;
}

std::string JetPoint::describe() const {
  std::ostringstream os;
  os << "seed=" << seed() << " m=" << m_ << " order=" << sp_->order();
  return os.str();
}

}  // namespace brst
