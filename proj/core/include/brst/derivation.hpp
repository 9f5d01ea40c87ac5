#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "brst/expr.hpp"

namespace brst {

class UndefinedAction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Declares that inverse generators `inverse_name[i][j]` are the entries of
/// the inverse of the n x n matrix with entries `field(field_name, {i, j})`.
/// Every derivation acts on them through D(X^{-1}) = -X^{-1} D(X) X^{-1}.
void register_inverse(const std::string& inverse_name,
                      const std::string& field_name, int n);
bool is_registered_inverse(const std::string& inverse_name);
/// (field name, n) for a registered inverse.
std::pair<std::string, int> inverse_source(const std::string& inverse_name);

/// Graded derivation, extended from generators by the graded Leibniz rule
/// D(ab) = D(a) b + (-1)^{|D||a|} a D(b).
class Derivation {
 public:
  Derivation(std::string name, Bidegree shift)
      : name_(std::move(name)), shift_(shift) {}
  virtual ~Derivation() = default;

  const std::string& name() const { return name_; }
  Bidegree shift() const { return shift_; }
  bool odd() const { return shift_.odd(); }

  /// Value on a single generator (memoised).
  const Expr& on_generator(GenId g) const;
  Expr apply(const Expr& e) const;

 protected:
  virtual Expr compute(GenId g) const = 0;
  /// Shared treatment of registered inverse generators.
  Expr inverse_rule(GenId g) const;
  /// Drops memoised images; only safe while no caller holds one.
  void forget() const;

 private:
  std::string name_;
  Bidegree shift_;
  mutable std::mutex mutex_;
  mutable std::map<GenId, Expr> memo_;
};

using DerivationPtr = std::shared_ptr<const Derivation>;

/// Exterior differential: prolongs jets, d(dx) = 0.
class ExteriorD final : public Derivation {
 public:
  explicit ExteriorD(int dim) : Derivation("d", {1, 0}), dim_(dim) {}
  int dim() const { return dim_; }

 protected:
  Expr compute(GenId g) const override;

 private:
  int dim_;
};

/// Total coordinate derivative d/dx^mu.
class TotalDerivative final : public Derivation {
 public:
  explicit TotalDerivative(int mu)
      : Derivation("D" + std::to_string(mu), {0, 0}), mu_(mu) {}

 protected:
  Expr compute(GenId g) const override;

 private:
  int mu_;
};

/// Interior product with a vector whose components are Exprs of common
/// bidegree (0, k): sends dx^mu to V^mu, kills all other generators.
class Interior final : public Derivation {
 public:
  Interior(std::string name, std::vector<Expr> components, int ghost_degree);

 protected:
  Expr compute(GenId g) const override;

 private:
  std::vector<Expr> components_;
};

/// BRST-type operator given by a rule table on jet-free generators and
/// extended to jets by commuting with coordinate derivatives.
/// Differentials are annihilated.
class RuleDerivation final : public Derivation {
 public:
  RuleDerivation(std::string name, Bidegree shift) : Derivation(std::move(name), shift) {}

  void set_rule(GenId base, Expr value);
  bool has_rule(GenId base) const;
  const std::map<GenId, Expr>& rules() const { return rules_; }

 protected:
  Expr compute(GenId g) const override;

 private:
  std::map<GenId, Expr> rules_;
};

/// Graded commutator [A, B] = AB - (-1)^{|A||B|} BA of two derivations.
class CommutatorDerivation final : public Derivation {
 public:
  CommutatorDerivation(std::string name, DerivationPtr a, DerivationPtr b);

 protected:
  Expr compute(GenId g) const override;

 private:
  DerivationPtr a_, b_;
};

/// Linear combination sum_i D_i of derivations of equal shift.
class SumDerivation final : public Derivation {
 public:
  SumDerivation(std::string name, std::vector<DerivationPtr> parts);

 protected:
  Expr compute(GenId g) const override;

 private:
  std::vector<DerivationPtr> parts_;
};

/// The standard operators for spacetime dimension m.
struct StandardOps {
  int dim = 0;
  DerivationPtr d;
  DerivationPtr i_xi;
  DerivationPtr lie_xi;  // L_xi = i_xi d - d i_xi
  std::vector<DerivationPtr> partial;

  static StandardOps make(int dim);
};

/// Jet-free generator carrying the same name/indices (strips derivatives).
GenId base_of(GenId g);
/// Apply total derivatives listed in `jet` to e.
Expr total_derivative(const Expr& e, const std::vector<int>& jet);

/// sum_k (i)^k e / k!, finite because an interior product lowers form degree.
Expr exp_interior(const Expr& e, const Derivation& interior);

/// Bracket of vector fields [xi, xi]^rho = 2 xi^mu d_mu xi^rho.
std::vector<Expr> xi_bracket(int dim);

}  // namespace brst
