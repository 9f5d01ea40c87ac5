#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "brst/matrix.hpp"

namespace brst {

class MatTerm;
using TermPtr = std::shared_ptr<const MatTerm>;

/// Lazy matrix expression. Derivations are never expanded eagerly: the
/// evaluator distributes them over products by the graded Leibniz rule and
/// applies them symbolically only on leaves.
class MatTerm {
 public:
  enum class Op { Leaf, Sum, Product, Apply, Block, Mask, Transpose };

  Op op() const { return op_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const MatrixExpr& leaf() const { return leaf_; }
  const std::vector<std::pair<Rational, TermPtr>>& summands() const { return summands_; }
  const std::vector<TermPtr>& factors() const { return factors_; }
  const DerivationPtr& derivation() const { return der_; }
  const TermPtr& arg() const { return arg_; }
  int r0() const { return r0_; }
  int c0() const { return c0_; }
  const std::vector<std::pair<int, int>>& mask() const { return mask_; }

  /// Parity of the represented matrix (nullopt: identically zero leaf).
  std::optional<bool> parity() const { return parity_; }
  /// True if some leaf contains inverse generators, or a derivation may
  /// produce them.
  bool has_inverse() const { return has_inverse_; }

  static TermPtr make_leaf(MatrixExpr m);
  static TermPtr make_sum(std::vector<std::pair<Rational, TermPtr>> parts);
  static TermPtr make_product(std::vector<TermPtr> factors);
  static TermPtr make_apply(DerivationPtr d, TermPtr arg);
  static TermPtr make_block(TermPtr arg, int r0, int c0, int nr, int nc);
  static TermPtr make_mask(TermPtr arg, std::vector<std::pair<int, int>> keep);
  static TermPtr make_transpose(TermPtr arg);

 private:
  Op op_ = Op::Leaf;
  int rows_ = 0, cols_ = 0;
  MatrixExpr leaf_;
  std::vector<std::pair<Rational, TermPtr>> summands_;
  std::vector<TermPtr> factors_;
  DerivationPtr der_;
  TermPtr arg_;
  int r0_ = 0, c0_ = 0;
  std::vector<std::pair<int, int>> mask_;
  std::optional<bool> parity_;
  bool has_inverse_ = false;
};

// Builders.
TermPtr leaf(MatrixExpr m);
TermPtr zero_term(int rows, int cols);
TermPtr identity_term(int n);
TermPtr operator+(const TermPtr& a, const TermPtr& b);
TermPtr operator-(const TermPtr& a, const TermPtr& b);
TermPtr operator-(const TermPtr& a);
TermPtr operator*(const TermPtr& a, const TermPtr& b);
TermPtr operator*(const Rational& c, const TermPtr& a);
TermPtr apply(const DerivationPtr& d, const TermPtr& a);
/// ab - (-1)^{|a||b|} ba.
TermPtr commutator(const TermPtr& a, const TermPtr& b);
TermPtr block(const TermPtr& a, int r0, int c0, int nr, int nc);
TermPtr mask(const TermPtr& a, std::vector<std::pair<int, int>> keep);
TermPtr transpose(const TermPtr& a);

/// Even generator values for one evaluation point.
class Valuation {
 public:
  virtual ~Valuation() = default;
  /// Value of an even generator, or nullptr to keep it symbolic.
  virtual const Rational* value(GenId g) = 0;
};

/// Leaves the expression untouched (symbolic expansion).
class SymbolicValuation final : public Valuation {
 public:
  const Rational* value(GenId) override { return nullptr; }
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluates trees. With a SymbolicValuation this is full expansion; with a
/// point valuation, even generators are replaced by rationals at the leaves
/// so products only ever multiply small matrices of odd polynomials.
class Evaluator {
 public:
  explicit Evaluator(Valuation& val, std::size_t term_budget = 0)
      : val_(val), budget_(term_budget) {}
  MatrixExpr eval(const TermPtr& t) { return eval(t, {}); }

 private:
  using Stack = std::vector<const Derivation*>;
  MatrixExpr eval(const TermPtr& t, const Stack& stack);
  MatrixExpr eval_product(const MatTerm& t, const Stack& stack);
  MatrixExpr value(const MatrixExpr& m);
  /// D_k ... D_1 e at the point, seq = (D_1, ..., D_k). Derivations are
  /// distributed over the factors of each monomial and only single
  /// generator images are expanded, so inverse rules never blow up.
  Expr valued_apply(const Expr& e, const Stack& seq);
  const Expr& image(GenId g, const Stack& seq);
  void charge(const MatrixExpr& m);

  Valuation& val_;
  std::size_t budget_;
  std::map<std::pair<const MatTerm*, Stack>, MatrixExpr> memo_;
  std::map<std::pair<Stack, GenId>, Expr> images_;
  std::vector<TermPtr> pinned_;  // memo keys stay valid while the evaluator lives
};

/// Full symbolic expansion (throws BudgetExceeded past `budget` terms per
/// intermediate matrix, 0 = unlimited).
MatrixExpr expand(const TermPtr& t, std::size_t budget = 0);

}  // namespace brst
