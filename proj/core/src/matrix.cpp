#include "brst/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace brst {

MatrixExpr::MatrixExpr(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
  entries_.resize(static_cast<std::size_t>(rows * cols));
}

MatrixExpr MatrixExpr::identity(int n) {
  MatrixExpr r(n, n);
  for (int i = 0; i < n; ++i) r.at(i, i) = Expr::constant(1);
  return r;
}

MatrixExpr MatrixExpr::from_rationals(const std::vector<std::vector<Rational>>& rows) {
  MatrixExpr r(static_cast<int>(rows.size()), static_cast<int>(rows.at(0).size()));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) = Expr(rows[i].at(j));
  return r;
}

std::size_t MatrixExpr::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= rows_ || j >= cols_)
    throw DimensionError("matrix index out of range");
  return static_cast<std::size_t>(i * cols_ + j);
}

bool MatrixExpr::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Expr& e) { return e.is_zero(); });
}

std::optional<bool> MatrixExpr::parity() const {
  std::optional<bool> p;
  for (const auto& e : entries_) {
    if (e.is_zero()) continue;
    auto q = e.parity();
    if (!q) throw ParityError("matrix entry of mixed parity: " + e.str());
    if (p && *p != *q) throw ParityError("matrix entries of different parity");
    p = q;
  }
  return p;
}

std::optional<Bidegree> MatrixExpr::bidegree() const {
  std::optional<Bidegree> b;
  for (const auto& e : entries_) {
    if (e.is_zero()) continue;
    auto q = e.bidegree();
    if (!q || (b && *b != *q)) return std::nullopt;
    b = q;
  }
  return b;
}

std::size_t MatrixExpr::term_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.size();
  return n;
}

bool MatrixExpr::contains_kind(GenKind k) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Expr& e) { return e.contains_kind(k); });
}

MatrixExpr MatrixExpr::operator-() const {
  return map([](const Expr& e) { return -e; });
}

MatrixExpr& MatrixExpr::operator+=(const MatrixExpr& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("sum of mismatched matrices");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

MatrixExpr& MatrixExpr::operator-=(const MatrixExpr& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("difference of mismatched matrices");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

MatrixExpr operator*(MatrixExpr a, const Rational& c) {
  for (auto& e : a.entries_) e *= c;
  return a;
}

bool operator==(const MatrixExpr& a, const MatrixExpr& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

MatrixExpr MatrixExpr::transpose() const {
  MatrixExpr r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

MatrixExpr MatrixExpr::block(int r0, int c0, int nr, int nc) const {
  MatrixExpr r(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

void MatrixExpr::set_block(int r0, int c0, const MatrixExpr& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

MatrixExpr mat_product_graded(const MatrixExpr& a, const MatrixExpr& b) {
  if (a.cols() != b.rows()) throw DimensionError("inner dimensions differ");
  MatrixExpr r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      ExprBuilder acc;
      for (int k = 0; k < a.cols(); ++k) {
        const Expr& x = a.at(i, k);
        const Expr& y = b.at(k, j);
        if (!x.is_zero() && !y.is_zero()) acc.add_product(x, y);
      }
      r.at(i, j) = acc.build();
    }
  }
  return r;
}

MatrixExpr graded_commutator(const MatrixExpr& a, const MatrixExpr& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("commutator needs square matrices of equal size");
  auto pa = a.parity();
  auto pb = b.parity();
  MatrixExpr ab = a * b;
  MatrixExpr ba = b * a;
  if (pa.value_or(false) && pb.value_or(false)) return ab + ba;
  return ab - ba;
}

EtaMetric EtaMetric::minkowski(int m) {
  EtaMetric e;
  e.diagonal.assign(static_cast<std::size_t>(m), Rational(1));
  if (m > 0) e.diagonal[0] = -1;
  return e;
}

EtaMetric EtaMetric::euclidean(int m) {
  EtaMetric e;
  e.diagonal.assign(static_cast<std::size_t>(m), Rational(1));
  return e;
}

MatrixExpr EtaMetric::matrix() const {
  MatrixExpr r(dim(), dim());
  for (int i = 0; i < dim(); ++i) r.at(i, i) = Expr(diagonal[static_cast<std::size_t>(i)]);
  return r;
}

MatrixExpr EtaMetric::inverse() const {
  MatrixExpr r(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    r.at(i, i) = Expr(Rational(1) / diagonal[static_cast<std::size_t>(i)]);
  return r;
}

MatrixExpr eta_transpose(const MatrixExpr& v, const EtaMetric& eta) {
  if (v.rows() == 1 && v.cols() == eta.dim()) return (v * eta.inverse()).transpose();
  if (v.cols() == 1 && v.rows() == eta.dim()) return (eta.matrix() * v).transpose();
  throw DimensionError("eta-transpose needs a row or column vector of size m");
}

LieTemplate LieTemplate::build(const std::string& name, int m, EtaMetric eta) {
  LieTemplate t;
  t.name_ = name;
  t.m_ = m;
  if (eta.diagonal.empty()) eta = EtaMetric::minkowski(m);
  if (eta.dim() != m) throw DimensionError("eta size differs from m");
  t.eta_ = std::move(eta);
  if (name == "poincare") {
    if (m < 2) throw DimensionError("poincare needs m >= 2");
    t.kind_ = TemplateKind::Poincare;
    t.size_ = m + 1;
  } else if (name == "mobius") {
    if (m < 3) throw DimensionError("mobius needs m >= 3");
    t.kind_ = TemplateKind::Mobius;
    t.size_ = m + 2;
  } else if (name == "lorentz") {
    if (m < 2) throw DimensionError("lorentz needs m >= 2");
    t.kind_ = TemplateKind::Lorentz;
    t.size_ = m;
  } else if (name == "co") {
    if (m < 2) throw DimensionError("co needs m >= 2");
    t.kind_ = TemplateKind::Co;
    t.size_ = m;
  } else {
    throw std::invalid_argument("unknown Lie template " + name);
  }
  return t;
}

namespace {

std::string pos(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// eta A + A^T eta = c * eta on the m x m block starting at (o, o).
void check_so_block(const MatrixExpr& M, const EtaMetric& eta, int o,
                    bool allow_scalar, std::vector<std::string>& out) {
  int m = eta.dim();
  std::optional<Expr> scale;
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      const Rational& ea = eta.diagonal[static_cast<std::size_t>(a)];
      const Rational& eb = eta.diagonal[static_cast<std::size_t>(b)];
      Expr s = M.at(o + a, o + b) * ea + M.at(o + b, o + a) * eb;
      if (a == b && allow_scalar) {
        Expr c = s * (Rational(1) / ea);
        if (!scale) scale = c;
        else if (!(*scale == c)) out.push_back("non-conformal diagonal at " + pos(o + a, o + a));
        continue;
      }
      if (!s.is_zero()) out.push_back("not eta-antisymmetric at " + pos(o + a, o + b));
    }
  }
}

void require_zero(const MatrixExpr& M, int i, int j, std::vector<std::string>& out) {
  if (!M.at(i, j).is_zero()) out.push_back("nonzero entry " + pos(i, j));
}

}  // namespace

std::vector<std::string> LieTemplate::violations(const MatrixExpr& M) const {
  std::vector<std::string> out;
  if (M.rows() != size_ || M.cols() != size_) {
    out.push_back("shape differs from template " + name_);
    return out;
  }
  switch (kind_) {
    case TemplateKind::Lorentz:
      check_so_block(M, eta_, 0, false, out);
      break;
    case TemplateKind::Co:
      check_so_block(M, eta_, 0, true, out);
      break;
    case TemplateKind::Poincare:
      check_so_block(M, eta_, 0, false, out);
      for (int j = 0; j <= m_; ++j) require_zero(M, m_, j, out);
      break;
    case TemplateKind::Mobius: {
      int last = m_ + 1;
      check_so_block(M, eta_, 1, false, out);
      require_zero(M, 0, last, out);
      require_zero(M, last, 0, out);
      if (!(M.at(last, last) + M.at(0, 0)).is_zero())
        out.push_back("(3,3) block is not minus (1,1)");
      // (2,3) = ((1,2) eta^{-1})^T and (3,2) = (eta (2,1))^T
      MatrixExpr row = M.block(0, 1, 1, m_);
      MatrixExpr col = M.block(1, 0, m_, 1);
      if (!(M.block(1, last, m_, 1) == eta_transpose(row, eta_)))
        out.push_back("(2,3) block is not the eta-transpose of (1,2)");
      if (!(M.block(last, 1, 1, m_) == eta_transpose(col, eta_)))
        out.push_back("(3,2) block is not the eta-transpose of (2,1)");
      break;
    }
  }
  return out;
}

std::vector<std::string> LieTemplate::sectors() const {
  if (kind_ == TemplateKind::Mobius) return {"g-1", "g0", "g1", "trace", "outside"};
  if (kind_ == TemplateKind::Poincare) return {"linear", "translation", "outside"};
  return {"all"};
}

std::optional<int> LieTemplate::sector_degree(const std::string& sector) {
  if (sector == "g-1") return -1;
  if (sector == "g0") return 0;
  if (sector == "g1") return 1;
  return std::nullopt;
}

std::vector<std::pair<int, int>> LieTemplate::sector_positions(const std::string& sector) const {
  std::vector<std::pair<int, int>> out;
  auto add_block = [&](int r0, int c0, int nr, int nc) {
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) out.emplace_back(r0 + i, c0 + j);
  };
  if (kind_ == TemplateKind::Mobius) {
    int last = m_ + 1;
    if (sector == "g-1") {
      add_block(1, 0, m_, 1);
      add_block(last, 1, 1, m_);
    } else if (sector == "g0") {
      add_block(0, 0, 1, 1);
      add_block(1, 1, m_, m_);
      add_block(last, last, 1, 1);
    } else if (sector == "g1") {
      add_block(0, 1, 1, m_);
      add_block(1, last, m_, 1);
    } else if (sector == "trace") {
      add_block(0, 0, 1, 1);
      add_block(last, last, 1, 1);
    } else if (sector == "outside") {
      out.emplace_back(0, last);
      out.emplace_back(last, 0);
    } else {
      throw std::invalid_argument("unknown sector " + sector);
    }
  } else if (kind_ == TemplateKind::Poincare) {
    if (sector == "linear") add_block(0, 0, m_, m_);
    else if (sector == "translation") add_block(0, m_, m_, 1);
    else if (sector == "outside") add_block(m_, 0, 1, m_ + 1);
    else throw std::invalid_argument("unknown sector " + sector);
  } else {
    if (sector != "all") throw std::invalid_argument("unknown sector " + sector);
    add_block(0, 0, m_, m_);
  }
  return out;
}

MatrixExpr sector_project(const MatrixExpr& M, const LieTemplate& t,
                          const std::string& sector) {
  if (M.rows() != t.size() || M.cols() != t.size())
    throw DimensionError("matrix does not match template " + t.name());
  MatrixExpr r(M.rows(), M.cols());
  for (auto [i, j] : t.sector_positions(sector)) r.at(i, j) = M.at(i, j);
  return r;
}

std::string pretty_print(const MatrixExpr& M, const std::vector<int>& cuts) {
  std::vector<std::string> cells;
  std::vector<std::size_t> width(static_cast<std::size_t>(M.cols()), 1);
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      cells.push_back(M.at(i, j).str());
      width[static_cast<std::size_t>(j)] = std::max(width[static_cast<std::size_t>(j)], cells.back().size());
    }
  }
  auto is_cut = [&](int k) { return std::find(cuts.begin(), cuts.end(), k) != cuts.end(); };
  std::ostringstream os;
  for (int i = 0; i < M.rows(); ++i) {
    if (i > 0 && is_cut(i)) {
      for (int j = 0; j < M.cols(); ++j) {
        if (j > 0) os << (is_cut(j) ? "-+-" : "--");
        os << std::string(width[static_cast<std::size_t>(j)], '-');
      }
      os << '\n';
    }
    for (int j = 0; j < M.cols(); ++j) {
      if (j > 0) os << (is_cut(j) ? " | " : "  ");
      const auto& c = cells[static_cast<std::size_t>(i * M.cols() + j)];
      os << c << std::string(width[static_cast<std::size_t>(j)] - c.size(), ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace brst
