#include "brst/identity.hpp"

#include "brst/derivation.hpp"
#include "brst/tps.hpp"

#include <chrono>
#include <random>

namespace brst {

const char* to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Symbolic: return "symbolic";
    case CheckMode::Randomized: return "randomized";
    case CheckMode::Both: return "both";
  }
  return "?";
}

CheckMode parse_mode(const std::string& s) {
  if (s == "symbolic") return CheckMode::Symbolic;
  if (s == "randomized") return CheckMode::Randomized;
  if (s == "both") return CheckMode::Both;
  throw std::invalid_argument("unknown mode " + s);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t trial_seed(const CheckContext& ctx, int trial) {
  return mix_seed(mix_seed(ctx.base_seed, hash_string(ctx.scene_key)),
                  static_cast<std::uint64_t>(trial));
}

namespace {

Rational small_rational(std::uint64_t h) {
  static const long nums[] = {-3, -2, -1, 1, 2, 3, 5, -5};
  static const long dens[] = {1, 1, 2, 3, 1, 4};
  return make_rational(nums[h % 8], dens[(h / 8) % 6]);
}

}  // namespace

void RandomJetPoint::fill_inverse(const std::string& inverse_name) {
  auto [field_name, n] = inverse_source(inverse_name);
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)].push_back(*value(field(field_name, {i, j})));
  if (!invert_rational(a)) throw std::runtime_error("random matrix for " + field_name + " is singular");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cache_[inverse_component(inverse_name, {i, j})] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

const Rational* RandomJetPoint::value(GenId g) {
  if (auto it = cache_.find(g); it != cache_.end()) return &it->second;
  const auto& gen = generator(g);
  if (gen.odd()) return nullptr;
  if (gen.key.kind == GenKind::Inverse) {
    fill_inverse(gen.key.name);
    return &cache_.at(g);
  }
  Rational v = small_rational(mix_seed(seed(), hash_string(render(g))));
  // keep matrices of registered inverses comfortably invertible
  if (gen.key.jet.empty() && gen.key.indices.size() == 2 &&
      gen.key.indices[0] == gen.key.indices[1])
    v += 7;
  return &cache_.emplace(g, v).first->second;
}

std::shared_ptr<TrialPoint> TrialCache::get(std::uint64_t seed) {
  auto it = points_.find(seed);
  if (it == points_.end()) it = points_.emplace(seed, make_(seed)).first;
  return it->second;
}

namespace {

std::string first_residual(const MatrixExpr& r) {
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (!r.at(i, j).is_zero()) {
        std::string s = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + r.at(i, j).str();
        if (s.size() > 400) s = s.substr(0, 400) + " ...";
        return s;
      }
  return {};
}

bool symbolic_applicable(const Identity& id) { return !id.oracle && id.rhs; }

// Position of a reducible (inverse, source) pair in a monomial.
struct Pair {
  std::size_t inv, src;
  std::string inv_name, src_name;
  int i, j, n;
};

std::optional<Pair> find_pair(const Monomial& mono, bool left) {
  for (std::size_t a = 0; a < mono.size(); ++a) {
    const auto& ka = generator(mono[a]).key;
    if (ka.kind != GenKind::Inverse || !ka.jet.empty()) continue;
    auto [src, n] = inverse_source(ka.name);
    int last = n - 1;
    // left: U_{i,last} X_{last,j}; right: X_{i,last} U_{last,j}
    if (ka.indices[left ? 1 : 0] != last) continue;
    for (std::size_t b = 0; b < mono.size(); ++b) {
      const auto& kb = generator(mono[b]).key;
      if (kb.kind != GenKind::Field || !kb.jet.empty() || kb.name != src) continue;
      if (kb.indices[left ? 0 : 1] != last) continue;
      int i = left ? ka.indices[0] : kb.indices[0];
      int j = left ? kb.indices[1] : ka.indices[1];
      return Pair{a, b, ka.name, src, i, j, n};
    }
  }
  return std::nullopt;
}

}  // namespace

Expr reduce_inverse_relations(const Expr& e, bool left) {
  std::vector<Term> work(e.terms().begin(), e.terms().end());
  ExprBuilder done;
  while (!work.empty()) {
    Term t = std::move(work.back());
    work.pop_back();
    auto p = find_pair(t.mono, left);
    if (!p) {
      done.add(t.mono, t.coeff);
      continue;
    }
    std::vector<GenId> rest;
    for (std::size_t k = 0; k < t.mono.size(); ++k)
      if (k != p->inv && k != p->src) rest.push_back(t.mono[k]);
    std::vector<std::pair<std::vector<GenId>, Rational>> raw;
    if (p->i == p->j) raw.push_back({rest, t.coeff});
    for (int k = 0; k + 1 < p->n; ++k) {
      std::vector<GenId> f = rest;
      f.push_back(inverse_component(p->inv_name, left ? std::vector<int>{p->i, k} : std::vector<int>{k, p->j}));
      f.push_back(field(p->src_name, left ? std::vector<int>{k, p->j} : std::vector<int>{p->i, k}));
      raw.push_back({std::move(f), Rational(-t.coeff)});
    }
    Expr next = Expr::normalize(raw);
    for (const auto& nt : next.terms()) work.push_back(nt);
  }
  return done.build();
}

IdentityReport check_identity(const Identity& id, const CheckContext& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  IdentityReport rep;
  rep.identity_id = id.id;
  rep.anchor = id.anchor;
  rep.mode = ctx.mode;
  rep.note = id.note;
  bool run_symbolic = ctx.mode != CheckMode::Randomized && symbolic_applicable(id);
  bool run_random = ctx.mode != CheckMode::Symbolic || !run_symbolic;
  bool pass = true;
  try {
    if (run_symbolic) {
      try {
        MatrixExpr lhs = expand(id.lhs, ctx.symbolic_budget);
        MatrixExpr rhs = expand(id.rhs, ctx.symbolic_budget);
        MatrixExpr res = lhs - rhs;
        // Inverse generators are free symbols here. A zero residual survives
        // the quotient by U u = 1; a nonzero one may not, so evaluate instead.
        if (!res.is_zero() && res.contains_kind(GenKind::Inverse)) {
          for (bool left : {true, false}) {
            bool zero = true;
            for (int i = 0; i < res.rows() && zero; ++i)
              for (int j = 0; j < res.cols() && zero; ++j)
                zero = reduce_inverse_relations(res.at(i, j), left).is_zero();
            if (zero) {
              res = MatrixExpr(res.rows(), res.cols());
              rep.note += rep.note.empty() ? "" : "; ";
              rep.note += "zero modulo the inverse relations";
              break;
            }
          }
        }
        if (!res.is_zero() && res.contains_kind(GenKind::Inverse)) {
          run_symbolic = false;
          run_random = true;
        } else {
          rep.residual_term_count = res.term_count();
          if (!res.is_zero()) {
            pass = false;
            rep.residual = first_residual(res);
          }
        }
      } catch (const BudgetExceeded&) {
        run_symbolic = false;
        run_random = true;
        if (!rep.note.empty()) rep.note += "; ";
        rep.note += "symbolic expansion over budget, decided by exact evaluation";
      }
    }
    if (run_random) {
      if (!ctx.factory) throw std::logic_error("no trial factory for randomized check");
      for (int k = 0; k < ctx.trials; ++k) {
        TrialRecord tr;
        tr.seed = trial_seed(ctx, k);
        auto point = ctx.factory(tr.seed);
        tr.point = point->describe();
        Evaluator& ev = point->evaluator();
        MatrixExpr lhs = ev.eval(id.lhs);
        MatrixExpr rhs = id.oracle ? id.oracle(*point) : ev.eval(id.rhs);
        MatrixExpr res = lhs - rhs;
        tr.residual_terms = res.term_count();
        tr.pass = res.is_zero();
        if (ctx.trace) {
          tr.lhs_text = pretty_print(lhs);
          tr.rhs_text = pretty_print(rhs);
        }
        if (!tr.pass) {
          pass = false;
          rep.residual_term_count = std::max(rep.residual_term_count, tr.residual_terms);
          if (rep.residual.empty()) rep.residual = first_residual(res);
        }
        rep.trials.push_back(std::move(tr));
      }
    }
  } catch (const std::exception& e) {
    pass = false;
    rep.error = e.what();
  }
  rep.tier = run_symbolic && run_random ? "symbolic+randomized"
             : run_symbolic             ? "symbolic"
                                        : "randomized";
  rep.pass = pass;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace brst
