#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brst/identity.hpp"

namespace brst {

/// A BRST scenario: generator roster, rule tables, distinguished matrices.
struct BrstScene {
  std::string kind;  // "yang_mills", "gr", "conformal"
  int m = 0;         // spacetime dimension
  int n = 0;         // matrix size
  StandardOps ops;
  std::shared_ptr<RuleDerivation> s;
  std::shared_ptr<RuleDerivation> sigma;  // set by shift_algebra
  std::optional<LieTemplate> tmpl;

  MatrixExpr varpi;  // connection 1-form
  MatrixExpr ghost;  // gauge ghost v
  std::optional<MatrixExpr> psi;  // matter column

  TermPtr varpi_t, ghost_t, omega_t, psi_t;
  std::vector<GenId> roster;  // jet-free generators carrying s rules

  // ghost-sector helpers (m x m)
  MatrixExpr v_xi;                      // entries d_nu xi^rho
  std::shared_ptr<Interior> i_half_bracket;  // i_{[xi,xi]/2}

  TermPtr curvature(const TermPtr& conn) const;  // d w + w w
  TermPtr covariant(const TermPtr& conn, const TermPtr& x) const;  // d x + [w, x]
  TermPtr i_xi(const TermPtr& t) const { return brst::apply(ops.i_xi, t); }
  TermPtr d(const TermPtr& t) const { return brst::apply(ops.d, t); }
  TermPtr lie(const TermPtr& t) const { return brst::apply(ops.lie_xi, t); }
  TermPtr S(const TermPtr& t) const { return brst::apply(s, t); }
  TermPtr Sigma(const TermPtr& t) const { return brst::apply(sigma, t); }
  /// Embed the m x m matrix v_xi into the n x n block starting at `offset`.
  TermPtr v_xi_embedded(int offset) const;
};

/// Reads component rules for every generator of `conn` from the matrix
/// image D(conn). Entries of conn must be sums of c * g * dx^mu (1-forms)
/// or c * g (0-forms) with distinct base generators g.
void read_component_rules(RuleDerivation& D, const MatrixExpr& conn,
                          const MatrixExpr& image);

/// Jet-free generators appearing in a matrix.
std::vector<GenId> base_generators(const MatrixExpr& m);

/// Scene from a connection matrix and ghost matrix whose entries are single
/// generators (times constants). s rules are read from s w = -dw - [w, v],
/// s v = -v^2 and, with matter, s psi = -v psi.
BrstScene define_scene(const std::string& kind, int m, const MatrixExpr& varpi,
                       const MatrixExpr& ghost,
                       const std::optional<MatrixExpr>& psi = std::nullopt);

/// Yang-Mills scene: gl(n)-valued A, ghost v, optional matter column psi.
BrstScene define_yang_mills(int m, int n, bool matter);

/// Shared context for symbolic checks of formal scenes.
CheckContext formal_context(const BrstScene& scene, CheckMode mode,
                            std::uint64_t seed, const std::string& key);

IdentityReport check_nilpotency(const BrstScene& scene, const std::string& op,
                                const std::string& id, const std::string& anchor);

/// Which condition to expand.
enum class Horizontality { Russian, Matter, ShiftedRussian, ShiftedMatter };
/// Expanded condition LHS - RHS split by bidegree; one report per key.
std::map<Bidegree, IdentityReport> expand_horizontality(const BrstScene& scene,
                                                        Horizontality which,
                                                        const std::string& id_prefix,
                                                        const std::string& anchor);

/// sigma rules from sigma = s + L_xi on connection, ghost and matter, and
/// sigma xi = xi^mu d_mu xi. Returns the shifted scene.
BrstScene shift_algebra(const BrstScene& scene);
/// v' = v + i_xi varpi.
TermPtr shifted_ghost(const BrstScene& scene);

/// Dressing field with its inverse (trees).
struct Dressing {
  std::string name;
  TermPtr u, u_inv;
};

struct DressedAlgebra {
  TermPtr varpi, omega, ghost, psi;
  TermPtr ghost_prime;          // u^-1 v' u + u^-1 sigma u (shift then dress)
  TermPtr ghost_hat_shifted;    // v_hat + i_xi varpi_hat (dress then shift)
};

DressedAlgebra dress_algebra(const BrstScene& scene, const Dressing& u);

/// sigma u - (s + L_xi) u.
TermPtr obstruction(const BrstScene& scene, const Dressing& u);

/// Formal dressing scene: Yang-Mills plus an n x n dressing field u with
/// inverse U, residual ghost w; su = -v u + u w, sw = -w^2.
/// `tensorial` postulates sigma u = (s + L_xi) u + u v_xi (needs n == m),
/// otherwise sigma u = (s + L_xi) u. `constant` makes u the identity.
struct FormalDressing {
  BrstScene scene;  // shifted
  Dressing u;
  MatrixExpr w;
};
FormalDressing define_formal_dressing(int m, int n, bool tensorial, bool matter);

}  // namespace brst
