#include "brst/derivation.hpp"

#include <shared_mutex>

namespace brst {

namespace {

struct InverseTable {
  std::shared_mutex mutex;
  std::map<std::string, std::pair<std::string, int>> table;
};

InverseTable& inverse_table() {
  static InverseTable t;
  return t;
}

std::map<int, std::shared_ptr<TotalDerivative>>& partial_cache() {
  static std::map<int, std::shared_ptr<TotalDerivative>> cache;
  return cache;
}

const TotalDerivative& partial(int mu) {
  static std::mutex m;
  std::lock_guard lock(m);
  auto& c = partial_cache();
  auto it = c.find(mu);
  if (it == c.end()) it = c.emplace(mu, std::make_shared<TotalDerivative>(mu)).first;
  return *it->second;
}

}  // namespace

void register_inverse(const std::string& inverse_name,
                      const std::string& field_name, int n) {
  auto& t = inverse_table();
  std::unique_lock lock(t.mutex);
  t.table[inverse_name] = {field_name, n};
}

bool is_registered_inverse(const std::string& inverse_name) {
  auto& t = inverse_table();
  std::shared_lock lock(t.mutex);
  return t.table.count(inverse_name) != 0;
}

std::pair<std::string, int> inverse_source(const std::string& inverse_name) {
  auto& t = inverse_table();
  std::shared_lock lock(t.mutex);
  auto it = t.table.find(inverse_name);
  if (it == t.table.end())
    throw UndefinedAction("unregistered inverse generator " + inverse_name);
  return it->second;
}

const Expr& Derivation::on_generator(GenId g) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(g); it != memo_.end()) return it->second;
  }
  Expr value = compute(g);
  std::lock_guard lock(mutex_);
  return memo_.emplace(g, std::move(value)).first->second;
}

Expr Derivation::apply(const Expr& e) const {
  ExprBuilder out;
  Monomial left, mid, full;
  for (const auto& t : e.terms()) {
    const auto& m = t.mono;
    int odd_before = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      const Expr& dg = on_generator(m[k]);
      if (!dg.is_zero()) {
        left.assign(m.begin(), m.begin() + static_cast<long>(k));
        Monomial right(m.begin() + static_cast<long>(k) + 1, m.end());
        Rational c = t.coeff;
        if (odd() && (odd_before & 1)) c = -c;
        for (const auto& dt : dg.terms()) {
          int s1 = merge_monomials(left, dt.mono, mid);
          if (s1 == 0) continue;
          int s2 = merge_monomials(mid, right, full);
          if (s2 == 0) continue;
          Rational cc = c * dt.coeff;
          if (s1 * s2 < 0) cc = -cc;
          out.add(full, cc);
        }
      }
      if (generator(m[k]).odd()) ++odd_before;
    }
  }
  return out.build();
}

Expr Derivation::inverse_rule(GenId g) const {
  const auto& key = generator(g).key;
  auto [field_name, n] = inverse_source(key.name);
  int i = key.indices.at(0);
  int j = key.indices.at(1);
  ExprBuilder out;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const Expr& dx_kl = on_generator(field(field_name, {k, l}));
      if (dx_kl.is_zero()) continue;
      Expr left = Expr::gen(inverse_component(key.name, {i, k}));
      Expr right = Expr::gen(inverse_component(key.name, {l, j}));
      out.add(left * dx_kl * right, Rational(-1));
    }
  }
  return out.build();
}

GenId base_of(GenId g) {
  const auto& gen = generator(g);
  if (gen.key.jet.empty()) return g;
  GeneratorKey key = gen.key;
  key.jet.clear();
  return intern({std::move(key), gen.bidegree});
}

Expr total_derivative(const Expr& e, const std::vector<int>& jet) {
  Expr r = e;
  for (int mu : jet) r = partial(mu).apply(r);
  return r;
}

Expr ExteriorD::compute(GenId g) const {
  const auto& gen = generator(g);
  switch (gen.key.kind) {
    case GenKind::Differential:
      return {};
    case GenKind::Inverse:
      return inverse_rule(g);
    default: {
      ExprBuilder b;
      for (int mu = 0; mu < dim_; ++mu) {
        b.add_product(Expr::gen(dx(mu)), Expr::gen(prolong(g, mu)));
      }
      return b.build();
    }
  }
}

Expr TotalDerivative::compute(GenId g) const {
  const auto& gen = generator(g);
  switch (gen.key.kind) {
    case GenKind::Differential:
      return {};
    case GenKind::Inverse:
      return inverse_rule(g);
    default:
      return Expr::gen(prolong(g, mu_));
  }
}

Interior::Interior(std::string name, std::vector<Expr> components,
                   int ghost_degree)
    : Derivation(std::move(name), {-1, ghost_degree}),
      components_(std::move(components)) {}

Expr Interior::compute(GenId g) const {
  const auto& gen = generator(g);
  if (gen.key.kind != GenKind::Differential) return {};
  return components_.at(static_cast<std::size_t>(gen.key.indices.at(0)));
}

void Derivation::forget() const {
  std::lock_guard lock(mutex_);
  memo_.clear();
}

void RuleDerivation::set_rule(GenId base, Expr value) {
  rules_[base] = std::move(value);
  forget();
}

bool RuleDerivation::has_rule(GenId base) const { return rules_.count(base) != 0; }

Expr RuleDerivation::compute(GenId g) const {
  const auto& gen = generator(g);
  if (gen.key.kind == GenKind::Differential) return {};
  if (gen.key.kind == GenKind::Inverse) return inverse_rule(g);
  GenId base = base_of(g);
  auto it = rules_.find(base);
  if (it == rules_.end()) {
    throw UndefinedAction(name() + " has no rule for " + render(base));
  }
  return total_derivative(it->second, gen.key.jet);
}

CommutatorDerivation::CommutatorDerivation(std::string name, DerivationPtr a,
                                           DerivationPtr b)
    : Derivation(std::move(name), a->shift() + b->shift()),
      a_(std::move(a)),
      b_(std::move(b)) {}

Expr CommutatorDerivation::compute(GenId g) const {
  Expr ab = a_->apply(b_->on_generator(g));
  Expr ba = b_->apply(a_->on_generator(g));
  if (a_->odd() && b_->odd()) return ab + ba;
  return ab - ba;
}

SumDerivation::SumDerivation(std::string name, std::vector<DerivationPtr> parts)
    : Derivation(std::move(name), parts.at(0)->shift()), parts_(std::move(parts)) {
  for (const auto& p : parts_)
    if (p->shift() != shift())
      throw std::invalid_argument("summed derivations must share a shift");
}

Expr SumDerivation::compute(GenId g) const {
  Expr r;
  for (const auto& p : parts_) r += p->on_generator(g);
  return r;
}

StandardOps StandardOps::make(int dim) {
  StandardOps ops;
  ops.dim = dim;
  ops.d = std::make_shared<ExteriorD>(dim);
  std::vector<Expr> xs;
  for (int mu = 0; mu < dim; ++mu) xs.push_back(Expr::gen(xi(mu)));
  ops.i_xi = std::make_shared<Interior>("i_xi", std::move(xs), 1);
  ops.lie_xi = std::make_shared<CommutatorDerivation>("L_xi", ops.i_xi, ops.d);
  for (int mu = 0; mu < dim; ++mu)
    ops.partial.push_back(std::make_shared<TotalDerivative>(mu));
  return ops;
}

Expr exp_interior(const Expr& e, const Derivation& interior) {
  Expr total = e;
  Expr cur = e;
  for (long k = 1; !cur.is_zero(); ++k) {
    cur = interior.apply(cur) * Rational(1, k);
    total += cur;
  }
  return total;
}

std::vector<Expr> xi_bracket(int dim) {
  std::vector<Expr> out;
  for (int rho = 0; rho < dim; ++rho) {
    Expr c;
    for (int mu = 0; mu < dim; ++mu) {
      c += Expr::gen(xi(mu)) * Expr::gen(xi(rho, {mu}));
    }
    out.push_back(c * Rational(2));
  }
  return out;
}

}  // namespace brst
