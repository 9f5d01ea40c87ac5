#include "brst/expr.hpp"

#include <algorithm>
#include <sstream>

namespace brst {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool is_odd(GenId id) { return generator(id).odd(); }

// Sign of sorting `seq` (by id) restricted to odd entries; 0 if an odd id
// repeats. Sorts in place.
int sort_with_sign(std::vector<GenId>& seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!is_odd(seq[i])) continue;
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (!is_odd(seq[j])) continue;
      if (seq[i] == seq[j]) return 0;
      if (seq[j] < seq[i]) sign = -sign;
    }
  }
  std::stable_sort(seq.begin(), seq.end());
  return sign;
}

void canonicalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms = std::move(out);
}

}  // namespace

int merge_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  // odd factors of a not yet emitted
  int odd_remaining = 0;
  for (GenId g : a) odd_remaining += is_odd(g) ? 1 : 0;
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      if (j < b.size() && a[i] == b[j] && is_odd(a[i])) return 0;
      if (is_odd(a[i])) --odd_remaining;
      out.push_back(a[i++]);
    } else {
      if (is_odd(b[j]) && (odd_remaining & 1)) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  return sign;
}

Expr::Expr(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Expr Expr::gen(GenId id) {
  Expr e;
  e.terms_.push_back({Monomial{id}, Rational(1)});
  return e;
}

Expr Expr::normalize(
    const std::vector<std::pair<std::vector<GenId>, Rational>>& raw) {
  ExprBuilder b;
  for (const auto& [factors, c] : raw) {
    std::vector<GenId> seq = factors;
    for (GenId g : seq) {
      const auto& gen = generator(g);
      if (gen.jet_order() > jet_truncation()) throw JetOverflow(render(g));
    }
    int sign = sort_with_sign(seq);
    if (sign == 0) continue;
    b.add(Monomial(seq.begin(), seq.end()), sign > 0 ? c : Rational(-c));
  }
  return b.build();
}

Expr Expr::operator-() const {
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Expr& Expr::operator+=(const Expr& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->mono < j->mono)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->mono < i->mono) {
      out.push_back(*j++);
    } else {
      Rational c = i->coeff + j->coeff;
      if (sgn(c) != 0) out.push_back({std::move(i->mono), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr& Expr::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  ExprBuilder builder;
  builder.add_product(a, b);
  return builder.build();
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono) return false;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

static Bidegree monomial_bidegree(const Monomial& m) {
  Bidegree b;
  for (GenId g : m) b = b + generator(g).bidegree;
  return b;
}

std::map<Bidegree, Expr> Expr::bidegree_split() const {
  std::map<Bidegree, Expr> parts;
  // terms are visited in sorted order, so each part stays sorted
  for (const auto& t : terms_) {
    parts[monomial_bidegree(t.mono)].terms_.push_back(t);
  }
  return parts;
}

std::optional<Bidegree> Expr::bidegree() const {
  std::optional<Bidegree> b;
  for (const auto& t : terms_) {
    auto tb = monomial_bidegree(t.mono);
    if (b && *b != tb) return std::nullopt;
    b = tb;
  }
  return b;
}

std::optional<bool> Expr::parity() const {
  std::optional<bool> p;
  for (const auto& t : terms_) {
    bool odd = monomial_bidegree(t.mono).odd();
    if (p && *p != odd) return std::nullopt;
    p = odd;
  }
  return p.value_or(false);
}

bool Expr::contains_kind(GenKind k) const {
  for (const auto& t : terms_)
    for (GenId g : t.mono)
      if (generator(g).key.kind == k) return true;
  return false;
}

std::set<GenId> Expr::generators() const {
  std::set<GenId> out;
  for (const auto& t : terms_) out.insert(t.mono.begin(), t.mono.end());
  return out;
}

Rational Expr::constant_value() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1 && terms_[0].mono.empty()) return terms_[0].coeff;
  throw std::logic_error("expression is not constant: " + str());
}

Expr Expr::substitute(
    const std::function<std::optional<Expr>(GenId)>& assign) const {
  std::map<GenId, std::optional<Expr>> cache;
  auto image = [&](GenId g) -> const std::optional<Expr>& {
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    auto img = assign(g);
    if (img && !img->is_zero()) {
      auto p = img->parity();
      if (!p || *p != generator(g).odd()) {
        throw ParityError("substitution changes parity of " + render(g));
      }
    }
    return cache.emplace(g, std::move(img)).first->second;
  };
  ExprBuilder out;
  for (const auto& t : terms_) {
    Expr acc(t.coeff);
    for (GenId g : t.mono) {
      const auto& img = image(g);
      acc = acc * (img ? *img : Expr::gen(g));
      if (acc.is_zero()) break;
    }
    out.add(acc);
  }
  return out.build();
}

Expr Expr::evaluate_even(const std::function<const Rational*(GenId)>& value,
                         const std::function<bool(GenId)>& kill_odd) const {
  ExprBuilder out;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    Monomial rest;
    bool dead = false;
    for (GenId g : t.mono) {
      if (generator(g).odd()) {
        if (kill_odd && kill_odd(g)) {
          dead = true;
          break;
        }
        rest.push_back(g);
      } else {
        const Rational* v = value(g);
        if (v) c *= *v;
        else rest.push_back(g);
      }
    }
    // dropping even factors keeps the odd ones in order, so no sign change
    if (!dead && sgn(c) != 0) out.add(rest, c);
  }
  return out.build();
}

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  struct Printed {
    std::vector<GenId> factors;
    Rational coeff;
  };
  std::vector<Printed> printed;
  printed.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<GenId> f(t.mono.begin(), t.mono.end());
    // canonical key order; sign from permuting odd factors
    int sign = 1;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (is_odd(f[i]) && is_odd(f[j]) && key_less(f[j], f[i])) sign = -sign;
    std::stable_sort(f.begin(), f.end(), key_less);
    printed.push_back({std::move(f), sign > 0 ? t.coeff : Rational(-t.coeff)});
  }
  std::sort(printed.begin(), printed.end(),
            [](const Printed& a, const Printed& b) {
              return std::lexicographical_compare(
                  a.factors.begin(), a.factors.end(), b.factors.begin(),
                  b.factors.end(), key_less);
            });
  std::ostringstream os;
  bool first = true;
  for (const auto& p : printed) {
    Rational c = p.coeff;
    if (first) {
      if (sgn(c) < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    bool unit = (c == 1);
    if (!unit || p.factors.empty()) os << c.get_str();
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
      if (i > 0 || !unit) os << "*";
      os << render(p.factors[i]);
    }
  }
  return os.str();
}

namespace {

// Moves the factors at `targets` (given in desired order) to the right end.
// Returns the sign and writes the remaining monomial.
int extract_right(const Monomial& m, const std::vector<GenId>& targets,
                  Monomial& rest) {
  std::vector<GenId> seq;
  rest.clear();
  for (GenId g : m)
    if (std::find(targets.begin(), targets.end(), g) == targets.end()) {
      seq.push_back(g);
      rest.push_back(g);
    }
  for (GenId t : targets) seq.push_back(t);
  // sign of permutation m -> seq restricted to odd elements
  std::vector<std::size_t> pos;
  for (GenId g : seq) {
    if (!is_odd(g)) continue;
    pos.push_back(static_cast<std::size_t>(
        std::find(m.begin(), m.end(), g) - m.begin()));
  }
  int sign = 1;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      if (pos[j] < pos[i]) sign = -sign;
  return sign;
}

bool count_differentials(const Monomial& m, int expected) {
  int n = 0;
  for (GenId g : m)
    if (generator(g).key.kind == GenKind::Differential) ++n;
  return n == expected;
}

}  // namespace

Expr Expr::right_coefficient(GenId differential) const {
  ExprBuilder b;
  Monomial rest;
  for (const auto& t : terms_) {
    if (!count_differentials(t.mono, 1)) continue;
    if (std::find(t.mono.begin(), t.mono.end(), differential) == t.mono.end())
      continue;
    int sign = extract_right(t.mono, {differential}, rest);
    b.add(rest, sign > 0 ? t.coeff : Rational(-t.coeff));
  }
  return b.build();
}

Expr Expr::right_coefficient(GenId first, GenId second) const {
  ExprBuilder b;
  Monomial rest;
  for (const auto& t : terms_) {
    if (!count_differentials(t.mono, 2)) continue;
    if (std::find(t.mono.begin(), t.mono.end(), first) == t.mono.end() ||
        std::find(t.mono.begin(), t.mono.end(), second) == t.mono.end())
      continue;
    int sign = extract_right(t.mono, {first, second}, rest);
    b.add(rest, sign > 0 ? t.coeff : Rational(-t.coeff));
  }
  return b.build();
}

void ExprBuilder::add(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  pending_.push_back({m, c});
}

void ExprBuilder::add(const Expr& e, const Rational& scale) {
  for (const auto& t : e.terms_) pending_.push_back({t.mono, t.coeff * scale});
}

void ExprBuilder::add_product(const Expr& a, const Expr& b,
                              const Rational& scale) {
  Monomial m;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      int sign = merge_monomials(ta.mono, tb.mono, m);
      if (sign == 0) continue;
      Rational c = ta.coeff * tb.coeff;
      if (sign < 0) c = -c;
      if (scale != 1) c *= scale;
      pending_.push_back({m, std::move(c)});
    }
  }
  // keep memory bounded on long accumulations
  if (pending_.size() > (1u << 20)) {
    canonicalize_terms(pending_);
  }
}

std::size_t ExprBuilder::size() const { return pending_.size(); }

Expr ExprBuilder::build() {
  canonicalize_terms(pending_);
  Expr e;
  e.terms_ = std::move(pending_);
  pending_.clear();
  return e;
}

}  // namespace brst
