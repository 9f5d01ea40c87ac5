#pragma once

#include <string>

#include "brst/matrix.hpp"
#include "brst/oracle.hpp"

namespace brst {

/// Series given as exact polynomials: every jet is determined.
inline constexpr int kExactSeries = 1000;

/// -1 when `k` is the flipped display term, else +1.
inline Rational flip_sign(int flip, int k) { return flip == k ? Rational(-1) : Rational(1); }

/// so(eta)-valued m x m matrix from the independent components name[a,b(,mu)], a < b:
/// entry (a,b) = eta^{aa} x_{ab}, entry (b,a) = -eta^{bb} x_{ab}.
/// `form` gives Field components times dx^mu, otherwise Ghost components.
MatrixExpr lorentz_matrix(const std::string& name, int m, const EtaMetric& eta, bool form);

/// Component matrix e^a_mu.
MatrixExpr vielbein(int m, const std::string& name = "e");
/// Column of 1-forms e^a_mu dx^mu.
MatrixExpr vielbein_form(int m, const std::string& name = "e");
/// Inverse generators of the vielbein ("E<m>"), registered on first use.
MatrixExpr vielbein_inverse(int m, const std::string& name = "e");

/// Random polynomial vielbein with a dominant diagonal (nonsingular at the origin).
void seed_vielbein(JetPoint& p, int degree, const std::string& name = "e");
/// m x m series matrix of field `name`.
TpsMat series_matrix(const JetPoint& p, const std::string& name, int m);
/// Lorentz connection coefficients per dx^mu from the components name[a,b,mu].
FormMat lorentz_series(const JetPoint& p, const std::string& name, const EtaMetric& eta);

}  // namespace brst
