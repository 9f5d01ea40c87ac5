#include "brst/term.hpp"

#include <functional>

namespace brst {

namespace {

std::optional<bool> xor_parity(std::optional<bool> a, std::optional<bool> b) {
  if (!a || !b) return std::nullopt;
  return *a != *b;
}

std::optional<bool> join_parity(std::optional<bool> a, std::optional<bool> b) {
  if (!a) return b;
  if (!b) return a;
  if (*a != *b) throw ParityError("sum of terms of different parity");
  return a;
}

}  // namespace

TermPtr MatTerm::make_leaf(MatrixExpr m) {
  auto t = std::make_shared<MatTerm>();
  t->op_ = Op::Leaf;
  t->rows_ = m.rows();
  t->cols_ = m.cols();
  t->parity_ = m.parity();
  t->has_inverse_ = m.contains_kind(GenKind::Inverse);
  t->leaf_ = std::move(m);
  return t;
}

TermPtr MatTerm::make_sum(std::vector<std::pair<Rational, TermPtr>> parts) {
  if (parts.empty()) throw DimensionError("empty sum");
  auto t = std::make_shared<MatTerm>();
  t->op_ = Op::Sum;
  t->rows_ = parts[0].second->rows();
  t->cols_ = parts[0].second->cols();
  for (const auto& [c, p] : parts) {
    if (p->rows() != t->rows_ || p->cols() != t->cols_) throw DimensionError("sum of mismatched terms");
    t->parity_ = join_parity(t->parity_, p->parity());
    t->has_inverse_ = t->has_inverse_ || p->has_inverse();
  }
  t->summands_ = std::move(parts);
  return t;
}

TermPtr MatTerm::make_product(std::vector<TermPtr> factors) {
  if (factors.empty()) throw DimensionError("empty product");
  auto t = std::make_shared<MatTerm>();
  t->op_ = Op::Product;
  t->rows_ = factors.front()->rows();
  t->cols_ = factors.back()->cols();
  std::optional<bool> p = false;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k && factors[k - 1]->cols() != factors[k]->rows())
      throw DimensionError("inner dimensions differ in product");
    p = xor_parity(p, factors[k]->parity());
    t->has_inverse_ = t->has_inverse_ || factors[k]->has_inverse();
  }
  t->parity_ = p;
  t->factors_ = std::move(factors);
  return t;
}

TermPtr MatTerm::make_apply(DerivationPtr d, TermPtr arg) {
  auto t = std::make_shared<MatTerm>();
  t->op_ = Op::Apply;
  t->rows_ = arg->rows();
  t->cols_ = arg->cols();
  t->parity_ = xor_parity(arg->parity(), d->odd());
  t->has_inverse_ = arg->has_inverse();
  t->der_ = std::move(d);
  t->arg_ = std::move(arg);
  return t;
}

TermPtr MatTerm::make_block(TermPtr arg, int r0, int c0, int nr, int nc) {
  if (r0 < 0 || c0 < 0 || r0 + nr > arg->rows() || c0 + nc > arg->cols())
    throw DimensionError("block out of range");
  auto t = std::make_shared<MatTerm>();
  t->op_ = Op::Block;
  t->rows_ = nr;
  t->cols_ = nc;
  t->r0_ = r0;
  t->c0_ = c0;
  t->parity_ = arg->parity();
  t->has_inverse_ = arg->has_inverse();
  t->arg_ = std::move(arg);
  return t;
}

TermPtr MatTerm::make_mask(TermPtr arg, std::vector<std::pair<int, int>> keep) {
  auto t = std::make_shared<MatTerm>();
  t->op_ = Op::Mask;
  t->rows_ = arg->rows();
  t->cols_ = arg->cols();
  t->parity_ = arg->parity();
  t->has_inverse_ = arg->has_inverse();
  t->mask_ = std::move(keep);
  t->arg_ = std::move(arg);
  return t;
}

TermPtr MatTerm::make_transpose(TermPtr arg) {
  auto t = std::make_shared<MatTerm>();
  t->op_ = Op::Transpose;
  t->rows_ = arg->cols();
  t->cols_ = arg->rows();
  t->parity_ = arg->parity();
  t->has_inverse_ = arg->has_inverse();
  t->arg_ = std::move(arg);
  return t;
}

TermPtr leaf(MatrixExpr m) { return MatTerm::make_leaf(std::move(m)); }
TermPtr zero_term(int rows, int cols) { return leaf(MatrixExpr::zero(rows, cols)); }
TermPtr identity_term(int n) { return leaf(MatrixExpr::identity(n)); }

TermPtr operator+(const TermPtr& a, const TermPtr& b) {
  return MatTerm::make_sum({{Rational(1), a}, {Rational(1), b}});
}
TermPtr operator-(const TermPtr& a, const TermPtr& b) {
  return MatTerm::make_sum({{Rational(1), a}, {Rational(-1), b}});
}
TermPtr operator-(const TermPtr& a) { return MatTerm::make_sum({{Rational(-1), a}}); }
TermPtr operator*(const TermPtr& a, const TermPtr& b) {
  return MatTerm::make_product({a, b});
}
TermPtr operator*(const Rational& c, const TermPtr& a) {
  return MatTerm::make_sum({{c, a}});
}
TermPtr apply(const DerivationPtr& d, const TermPtr& a) { return MatTerm::make_apply(d, a); }

TermPtr commutator(const TermPtr& a, const TermPtr& b) {
  bool both_odd = a->parity().value_or(false) && b->parity().value_or(false);
  return MatTerm::make_sum({{Rational(1), a * b}, {Rational(both_odd ? 1 : -1), b * a}});
}

TermPtr block(const TermPtr& a, int r0, int c0, int nr, int nc) {
  return MatTerm::make_block(a, r0, c0, nr, nc);
}
TermPtr mask(const TermPtr& a, std::vector<std::pair<int, int>> keep) {
  return MatTerm::make_mask(a, std::move(keep));
}
TermPtr transpose(const TermPtr& a) { return MatTerm::make_transpose(a); }

MatrixExpr Evaluator::value(const MatrixExpr& m) {
  return m.map([&](const Expr& e) {
    return e.evaluate_even([&](GenId g) { return val_.value(g); });
  });
}

const Expr& Evaluator::image(GenId g, const Stack& seq) {
  auto key = std::make_pair(seq, g);
  if (auto it = images_.find(key); it != images_.end()) return it->second;
  const Expr& first = seq.front()->on_generator(g);
  Expr r = seq.size() == 1 ? first.evaluate_even([&](GenId h) { return val_.value(h); })
                           : valued_apply(first, Stack(seq.begin() + 1, seq.end()));
  return images_.emplace(std::move(key), std::move(r)).first->second;
}

Expr Evaluator::valued_apply(const Expr& e, const Stack& seq) {
  if (seq.empty()) return e.evaluate_even([&](GenId h) { return val_.value(h); });
  struct Placement {
    bool negate = false;
    std::vector<Stack> on;  // derivations landed on each factor, in order
  };
  ExprBuilder out;
  for (const auto& t : e.terms()) {
    const auto& mono = t.mono;
    std::size_t n = mono.size();
    std::vector<bool> base(n);
    for (std::size_t i = 0; i < n; ++i) base[i] = generator(mono[i]).odd();
    std::vector<Placement> cur{{false, std::vector<Stack>(n)}};
    for (const Derivation* D : seq) {
      std::vector<Placement> next;
      for (const auto& p : cur) {
        bool odd_before = false;
        for (std::size_t i = 0; i < n; ++i) {
          Placement q = p;
          if (D->odd() && odd_before) q.negate = !q.negate;
          q.on[i].push_back(D);
          next.push_back(std::move(q));
          bool par = base[i];
          for (const Derivation* x : p.on[i]) par ^= x->odd();
          odd_before ^= par;
        }
      }
      cur = std::move(next);
    }
    for (const auto& p : cur) {
      Expr prod(p.negate ? Rational(-t.coeff) : t.coeff);
      for (std::size_t i = 0; i < n && !prod.is_zero(); ++i) {
        if (p.on[i].empty()) {
          const Rational* v = generator(mono[i]).odd() ? nullptr : val_.value(mono[i]);
          prod = v ? prod * *v : prod * Expr::gen(mono[i]);
        } else {
          const Expr& im = image(mono[i], p.on[i]);
          prod = im.is_zero() ? Expr() : prod * im;
        }
      }
      out.add(prod);
    }
  }
  return out.build();
}

void Evaluator::charge(const MatrixExpr& m) {
  if (budget_ && m.term_count() > budget_)
    throw BudgetExceeded("intermediate matrix exceeds " + std::to_string(budget_) + " terms");
}

MatrixExpr Evaluator::eval(const TermPtr& tp, const Stack& stack) {
  auto key = std::make_pair(tp.get(), stack);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const MatTerm& t = *tp;
  MatrixExpr r;
  switch (t.op()) {
    case MatTerm::Op::Leaf: {
      if (stack.empty()) {
        r = value(t.leaf());
      } else {
        Stack seq(stack.rbegin(), stack.rend());
        r = t.leaf().map([&](const Expr& e) { return valued_apply(e, seq); });
      }
      break;
    }
    case MatTerm::Op::Sum: {
      r = MatrixExpr::zero(t.rows(), t.cols());
      for (const auto& [c, p] : t.summands()) r += eval(p, stack) * c;
      break;
    }
    case MatTerm::Op::Product:
      r = eval_product(t, stack);
      break;
    case MatTerm::Op::Apply: {
      Stack inner = stack;
      inner.push_back(t.derivation().get());
      r = eval(t.arg(), inner);
      break;
    }
    case MatTerm::Op::Block: {
      MatrixExpr a = eval(t.arg(), stack);
      r = a.block(t.r0(), t.c0(), t.rows(), t.cols());
      break;
    }
    case MatTerm::Op::Mask: {
      MatrixExpr a = eval(t.arg(), stack);
      r = MatrixExpr::zero(t.rows(), t.cols());
      for (auto [i, j] : t.mask()) r.at(i, j) = a.at(i, j);
      break;
    }
    case MatTerm::Op::Transpose:
      r = eval(t.arg(), stack).transpose();
      break;
  }
  charge(r);
  if (stack.empty()) pinned_.push_back(tp);
  return memo_.emplace(std::move(key), std::move(r)).first->second;
}

// D_1 ... D_k (f_1 ... f_n): each derivation (innermost first) lands on one
// factor and picks up (-1)^{|D| * (parities of the factors to its left)},
// where those parities already include derivations placed earlier.
MatrixExpr Evaluator::eval_product(const MatTerm& t, const Stack& stack) {
  const auto& f = t.factors();
  std::size_t n = f.size();
  MatrixExpr total = MatrixExpr::zero(t.rows(), t.cols());
  std::vector<std::size_t> choice(stack.size(), 0);
  std::vector<bool> base_par(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto p = f[j]->parity();
    if (!p) return total;  // a zero factor
    base_par[j] = *p;
  }
  while (true) {
    std::vector<bool> par = base_par;
    bool negative = false;
    for (std::size_t k = stack.size(); k-- > 0;) {
      std::size_t j = choice[k];
      if (stack[k]->odd()) {
        int left = 0;
        for (std::size_t l = 0; l < j; ++l) left += par[l] ? 1 : 0;
        if (left & 1) negative = !negative;
        par[j] = !par[j];
      }
    }
    std::vector<Stack> sub(n);
    for (std::size_t k = 0; k < stack.size(); ++k) sub[choice[k]].push_back(stack[k]);
    MatrixExpr prod = eval(f[0], sub[0]);
    for (std::size_t j = 1; j < n && !prod.is_zero(); ++j) {
      prod = prod * eval(f[j], sub[j]);
      charge(prod);
    }
    if (negative) total -= prod;
    else total += prod;
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == n) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return total;
}

MatrixExpr expand(const TermPtr& t, std::size_t budget) {
  SymbolicValuation v;
  Evaluator ev(v, budget);
  return ev.eval(t);
}

}  // namespace brst
