#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brst/derivation.hpp"

namespace brst {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense matrix of Exprs. Entry products use the super-commutative product,
/// so no extra signs appear at the matrix level.
class MatrixExpr {
 public:
  MatrixExpr() = default;
  MatrixExpr(int rows, int cols);
  static MatrixExpr zero(int rows, int cols) { return {rows, cols}; }
  static MatrixExpr identity(int n);
  static MatrixExpr from_rationals(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Expr& at(int i, int j) { return entries_.at(index(i, j)); }
  const Expr& at(int i, int j) const { return entries_.at(index(i, j)); }

  const std::optional<std::string>& tag() const { return tag_; }
  MatrixExpr& set_tag(std::string t) {
    tag_ = std::move(t);
    return *this;
  }

  bool is_zero() const;
  /// Parity shared by all nonzero entries; nullopt when zero.
  /// Throws ParityError when entries disagree.
  std::optional<bool> parity() const;
  std::optional<Bidegree> bidegree() const;
  std::size_t term_count() const;
  bool contains_kind(GenKind k) const;

  MatrixExpr operator-() const;
  MatrixExpr& operator+=(const MatrixExpr& o);
  MatrixExpr& operator-=(const MatrixExpr& o);
  friend MatrixExpr operator+(MatrixExpr a, const MatrixExpr& b) { return a += b; }
  friend MatrixExpr operator-(MatrixExpr a, const MatrixExpr& b) { return a -= b; }
  friend MatrixExpr operator*(MatrixExpr a, const Rational& c);
  friend MatrixExpr operator*(const Rational& c, MatrixExpr a) { return std::move(a) * c; }
  friend bool operator==(const MatrixExpr& a, const MatrixExpr& b);

  template <class F>
  MatrixExpr map(F&& f) const {
    MatrixExpr r(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = f(entries_[k]);
    return r;
  }
  MatrixExpr apply(const Derivation& d) const {
    return map([&](const Expr& e) { return d.apply(e); });
  }
  MatrixExpr transpose() const;
  MatrixExpr block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const MatrixExpr& b);

 private:
  std::size_t index(int i, int j) const;
  int rows_ = 0, cols_ = 0;
  std::vector<Expr> entries_;
  std::optional<std::string> tag_;
};

MatrixExpr mat_product_graded(const MatrixExpr& a, const MatrixExpr& b);
inline MatrixExpr operator*(const MatrixExpr& a, const MatrixExpr& b) {
  return mat_product_graded(a, b);
}
/// ab - (-1)^{|a||b|} ba for homogeneous square matrices.
MatrixExpr graded_commutator(const MatrixExpr& a, const MatrixExpr& b);

struct EtaMetric {
  std::vector<Rational> diagonal;
  /// diag(-1, 1, ..., 1).
  static EtaMetric minkowski(int m);
  static EtaMetric euclidean(int m);
  int dim() const { return static_cast<int>(diagonal.size()); }
  MatrixExpr matrix() const;
  MatrixExpr inverse() const;
};

/// Row r -> (r eta^{-1})^T, column t -> (eta t)^T.
MatrixExpr eta_transpose(const MatrixExpr& v, const EtaMetric& eta);

enum class TemplateKind { Poincare, Mobius, Lorentz, Co };

class LieTemplate {
 public:
  static LieTemplate build(const std::string& name, int m,
                           EtaMetric eta = EtaMetric{});

  TemplateKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int m() const { return m_; }
  int size() const { return size_; }
  const EtaMetric& eta() const { return eta_; }

  /// Linear conditions violated by M (empty when M is a member).
  std::vector<std::string> violations(const MatrixExpr& M) const;
  bool is_member(const MatrixExpr& M) const { return violations(M).empty(); }

  std::vector<std::string> sectors() const;
  /// Entry positions of a sector.
  std::vector<std::pair<int, int>> sector_positions(const std::string& sector) const;
  /// Grading degree of a sector (g-1, g0, g1 only).
  static std::optional<int> sector_degree(const std::string& sector);

 private:
  TemplateKind kind_ = TemplateKind::Lorentz;
  std::string name_;
  int m_ = 0, size_ = 0;
  EtaMetric eta_;
};

MatrixExpr sector_project(const MatrixExpr& M, const LieTemplate& t,
                          const std::string& sector);

/// Multi-line block rendering, one entry per cell, block separators at the
/// given row/column boundaries.
std::string pretty_print(const MatrixExpr& M, const std::vector<int>& cuts = {});

}  // namespace brst
