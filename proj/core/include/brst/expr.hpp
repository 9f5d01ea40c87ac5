#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "brst/generator.hpp"

namespace brst {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& q);

/// Factors sorted by id; odd generators occur at most once, even ones may
/// repeat. The internal id order is only used for storage.
using Monomial = boost::container::small_vector<GenId, 8>;

struct Term {
  Monomial mono;
  Rational coeff;
};

class ParityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of the free super-commutative algebra over Q generated by the
/// interned generators. Always in normal form: terms sorted by monomial,
/// no zero coefficients, no repeated odd factor.
class Expr {
 public:
  Expr() = default;
  explicit Expr(const Rational& c);
  static Expr gen(GenId id);
  static Expr constant(long num, long den = 1) {
    return Expr(make_rational(num, den));
  }

  /// Canonicalises an arbitrary list of (factor sequence, coefficient).
  /// Factor order in the input is significant: odd factors are sorted with
  /// the Koszul sign of the permutation.
  static Expr normalize(const std::vector<std::pair<std::vector<GenId>, Rational>>& raw);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Rational& c);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(Expr a, const Rational& c) { return a *= c; }
  friend Expr operator*(const Rational& c, Expr a) { return a *= c; }
  friend bool operator==(const Expr& a, const Expr& b);

  /// Parts keyed by bidegree; their sum is *this.
  std::map<Bidegree, Expr> bidegree_split() const;
  /// Bidegree if homogeneous (zero has none).
  std::optional<Bidegree> bidegree() const;
  /// Parity if all terms agree; zero counts as even.
  std::optional<bool> parity() const;

  bool contains_kind(GenKind k) const;
  std::set<GenId> generators() const;
  /// Rational value of a constant expression (throws otherwise).
  Rational constant_value() const;

  /// Homomorphic substitution. `assign` returns the image of a generator or
  /// nullopt to keep it. Images of odd generators must be odd (or zero) and
  /// images of even generators even.
  Expr substitute(const std::function<std::optional<Expr>(GenId)>& assign) const;

  /// Fast path: even generators replaced by rationals, odd generators kept
  /// unless listed in `kill_odd` (mapped to zero). Even generators without
  /// a value stay symbolic.
  Expr evaluate_even(const std::function<const Rational*(GenId)>& value,
                     const std::function<bool(GenId)>& kill_odd = {}) const;

  /// Canonical text: terms in (kind, name, indices, jet) order.
  std::string str() const;

  /// Coefficient c with term c*dx^mu (dx placed rightmost) for a 1-form part.
  Expr right_coefficient(GenId differential) const;
  /// Coefficient c with term c*dx^mu*dx^nu (mu<nu) for a 2-form part.
  Expr right_coefficient(GenId first, GenId second) const;

 private:
  friend class ExprBuilder;
  std::vector<Term> terms_;
};

/// Accumulates terms without intermediate canonicalisation.
class ExprBuilder {
 public:
  void add(const Monomial& m, const Rational& c);
  void add(const Expr& e, const Rational& scale = 1);
  void add_product(const Expr& a, const Expr& b, const Rational& scale = 1);
  Expr build();
  std::size_t size() const;

 private:
  std::vector<Term> pending_;
};

/// Merges two sorted monomials; returns sign (+1/-1) or 0 when an odd
/// factor repeats.
int merge_monomials(const Monomial& a, const Monomial& b, Monomial& out);

}  // namespace brst
