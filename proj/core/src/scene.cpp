#include "brst/scene.hpp"

#include <algorithm>
#include <set>

namespace brst {

TermPtr BrstScene::curvature(const TermPtr& conn) const { return d(conn) + conn * conn; }

TermPtr BrstScene::covariant(const TermPtr& conn, const TermPtr& x) const {
  return d(x) + commutator(conn, x);
}

TermPtr BrstScene::v_xi_embedded(int offset) const {
  MatrixExpr big(n, n);
  big.set_block(offset, offset, v_xi);
  return leaf(big);
}

std::vector<GenId> base_generators(const MatrixExpr& m) {
  std::set<GenId> seen;
  std::vector<GenId> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      for (GenId g : m.at(i, j).generators()) {
        auto k = generator(g).key.kind;
        if (k == GenKind::Differential || k == GenKind::Inverse) continue;
        GenId b = base_of(g);
        if (seen.insert(b).second) out.push_back(b);
      }
  return out;
}

void read_component_rules(RuleDerivation& D, const MatrixExpr& conn,
                          const MatrixExpr& image) {
  for (int i = 0; i < conn.rows(); ++i) {
    for (int j = 0; j < conn.cols(); ++j) {
      for (const auto& t : conn.at(i, j).terms()) {
        GenId g = 0;
        std::optional<GenId> diff;
        for (GenId f : t.mono) {
          if (generator(f).key.kind == GenKind::Differential) diff = f;
          else g = f;
        }
        if (t.mono.size() != (diff ? 2u : 1u))
          throw std::invalid_argument("component reading needs single-generator entries");
        if (D.has_rule(g)) continue;
        Expr img = diff ? image.at(i, j).right_coefficient(*diff) : image.at(i, j);
        D.set_rule(g, img * (Rational(1) / t.coeff));
      }
    }
  }
}

namespace {

MatrixExpr v_xi_matrix(int m) {
  MatrixExpr r(m, m);
  for (int rho = 0; rho < m; ++rho)
    for (int nu = 0; nu < m; ++nu) r.at(rho, nu) = Expr::gen(xi(rho, {nu}));
  return r;
}

void init_common(BrstScene& sc) {
  sc.ops = StandardOps::make(sc.m);
  sc.v_xi = v_xi_matrix(sc.m);
  auto br = xi_bracket(sc.m);
  for (auto& c : br) c *= Rational(1, 2);
  sc.i_half_bracket = std::make_shared<Interior>("i_half_bracket", std::move(br), 2);
}

void append_roster(BrstScene& sc, const MatrixExpr& m) {
  for (GenId g : base_generators(m))
    if (std::find(sc.roster.begin(), sc.roster.end(), g) == sc.roster.end()) sc.roster.push_back(g);
}

}  // namespace

BrstScene define_scene(const std::string& kind, int m, const MatrixExpr& varpi,
                       const MatrixExpr& ghost, const std::optional<MatrixExpr>& psi) {
  if (varpi.rows() != varpi.cols() || ghost.rows() != varpi.rows())
    throw DimensionError("connection and ghost must be square of equal size");
  BrstScene sc;
  sc.kind = kind;
  sc.m = m;
  sc.n = varpi.rows();
  init_common(sc);
  sc.varpi = varpi;
  sc.ghost = ghost;
  sc.varpi_t = leaf(varpi);
  sc.ghost_t = leaf(ghost);
  sc.omega_t = sc.curvature(sc.varpi_t);
  sc.s = std::make_shared<RuleDerivation>("s", Bidegree{0, 1});
  read_component_rules(*sc.s, varpi, expand(-sc.d(sc.ghost_t) - commutator(sc.varpi_t, sc.ghost_t)));
  read_component_rules(*sc.s, ghost, expand(-(sc.ghost_t * sc.ghost_t)));
  append_roster(sc, varpi);
  append_roster(sc, ghost);
  if (psi) {
    sc.psi = psi;
    sc.psi_t = leaf(*psi);
    read_component_rules(*sc.s, *psi, expand(-(sc.ghost_t * sc.psi_t)));
    append_roster(sc, *psi);
  }
  return sc;
}

BrstScene define_yang_mills(int m, int n, bool matter) {
  if (m < 1 || n < 1) throw DimensionError("yang_mills needs dim >= 1 and size >= 1");
  MatrixExpr A(n, n), v(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int mu = 0; mu < m; ++mu)
        A.at(i, j) += Expr::gen(field("A", {i, j, mu})) * Expr::gen(dx(mu));
      v.at(i, j) = Expr::gen(ghost("v", {i, j}));
    }
  }
  std::optional<MatrixExpr> psi;
  if (matter) {
    psi = MatrixExpr(n, 1);
    for (int i = 0; i < n; ++i) psi->at(i, 0) = Expr::gen(field("psi", {i}));
  }
  return define_scene("yang_mills", m, A, v, psi);
}

CheckContext formal_context(const BrstScene& scene, CheckMode mode,
                            std::uint64_t seed, const std::string& key) {
  CheckContext ctx;
  ctx.mode = mode;
  ctx.base_seed = seed;
  ctx.scene_key = key.empty() ? scene.kind : key;
  ctx.factory = [](std::uint64_t s) { return std::make_shared<RandomJetPoint>(s); };
  return ctx;
}

IdentityReport check_nilpotency(const BrstScene& scene, const std::string& op,
                                const std::string& id, const std::string& anchor) {
  IdentityReport rep;
  rep.identity_id = id;
  rep.anchor = anchor;
  rep.tier = "symbolic";
  const RuleDerivation* D = op == "sigma" ? scene.sigma.get() : scene.s.get();
  std::vector<GenId> gens = scene.roster;
  if (op == "sigma") {
    if (!D) throw std::logic_error("scene is not shifted");
    for (int mu = 0; mu < scene.m; ++mu) gens.push_back(xi(mu));
  }
  try {
    for (GenId g : gens) {
      Expr r = D->apply(D->on_generator(g));
      if (!r.is_zero()) {
        rep.residual_term_count += r.size();
        if (rep.residual.empty()) rep.residual = op + "^2 " + render(g) + " = " + r.str();
      }
    }
    rep.pass = rep.residual_term_count == 0;
  } catch (const std::exception& e) {
    rep.pass = false;
    rep.error = e.what();
  }
  return rep;
}

namespace {

std::map<Bidegree, MatrixExpr> split(const MatrixExpr& M) {
  std::map<Bidegree, MatrixExpr> out;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      for (auto& [b, e] : M.at(i, j).bidegree_split()) {
        auto it = out.try_emplace(b, M.rows(), M.cols()).first;
        it->second.at(i, j) = e;
      }
  return out;
}

}  // namespace

std::map<Bidegree, IdentityReport> expand_horizontality(const BrstScene& sc,
                                                        Horizontality which,
                                                        const std::string& id_prefix,
                                                        const std::string& anchor) {
  std::vector<TermPtr> lhs_parts, rhs_parts;
  bool shifted = which == Horizontality::ShiftedRussian || which == Horizontality::ShiftedMatter;
  if (shifted && !sc.sigma) throw std::logic_error("shifted horizontality needs a shifted scene");
  auto delta = [&](const TermPtr& t) { return shifted ? sc.Sigma(t) : sc.S(t); };
  TermPtr ghost = shifted ? shifted_ghost(sc) : sc.ghost_t;
  TermPtr alg = sc.varpi_t + ghost;
  if (which == Horizontality::Russian || which == Horizontality::ShiftedRussian) {
    lhs_parts = {sc.d(alg), delta(alg), alg * alg};
    rhs_parts = {sc.omega_t};
    if (shifted) {
      rhs_parts.push_back(sc.i_xi(sc.omega_t));
      rhs_parts.push_back(Rational(1, 2) * sc.i_xi(sc.i_xi(sc.omega_t)));
    }
  } else {
    if (!sc.psi_t) throw std::invalid_argument("matter horizontality needs a matter field");
    TermPtr Dpsi = sc.d(sc.psi_t) + sc.varpi_t * sc.psi_t;
    lhs_parts = {sc.d(sc.psi_t), delta(sc.psi_t), alg * sc.psi_t};
    rhs_parts = {Dpsi};
    if (shifted) rhs_parts.push_back(sc.i_xi(Dpsi));
  }
  std::set<Bidegree> keys;
  MatrixExpr residual;
  bool first = true;
  for (auto* parts : {&lhs_parts, &rhs_parts}) {
    for (const auto& p : *parts) {
      MatrixExpr e = expand(p);
      for (const auto& [b, _] : split(e)) keys.insert(b);
      if (parts == &rhs_parts) e = -e;
      if (first) residual = e;
      else residual += e;
      first = false;
    }
  }
  auto parts = split(residual);
  std::map<Bidegree, IdentityReport> out;
  for (const auto& b : keys) {
    IdentityReport rep;
    rep.identity_id = id_prefix + "." + to_string(b);
    rep.anchor = anchor;
    rep.tier = "symbolic";
    auto it = parts.find(b);
    rep.pass = it == parts.end() || it->second.is_zero();
    if (!rep.pass) {
      rep.residual_term_count = it->second.term_count();
      rep.residual = pretty_print(it->second);
    }
    out.emplace(b, std::move(rep));
  }
  return out;
}

BrstScene shift_algebra(const BrstScene& scene) {
  BrstScene sc = scene;
  sc.sigma = std::make_shared<RuleDerivation>("sigma", Bidegree{0, 1});
  read_component_rules(*sc.sigma, sc.varpi, expand(sc.S(sc.varpi_t) + sc.lie(sc.varpi_t)));
  read_component_rules(*sc.sigma, sc.ghost, expand(sc.S(sc.ghost_t) + sc.lie(sc.ghost_t)));
  if (sc.psi) read_component_rules(*sc.sigma, *sc.psi, expand(sc.S(sc.psi_t) + sc.lie(sc.psi_t)));
  auto br = xi_bracket(sc.m);
  for (int rho = 0; rho < sc.m; ++rho) sc.sigma->set_rule(xi(rho), br[static_cast<std::size_t>(rho)] * Rational(1, 2));
  return sc;
}

TermPtr shifted_ghost(const BrstScene& sc) { return sc.ghost_t + sc.i_xi(sc.varpi_t); }

DressedAlgebra dress_algebra(const BrstScene& sc, const Dressing& u) {
  DressedAlgebra r;
  r.varpi = u.u_inv * sc.varpi_t * u.u + u.u_inv * sc.d(u.u);
  r.omega = u.u_inv * sc.omega_t * u.u;
  r.ghost = u.u_inv * sc.ghost_t * u.u + u.u_inv * sc.S(u.u);
  if (sc.psi_t) r.psi = u.u_inv * sc.psi_t;
  if (sc.sigma) {
    r.ghost_prime = u.u_inv * shifted_ghost(sc) * u.u + u.u_inv * sc.Sigma(u.u);
    r.ghost_hat_shifted = r.ghost + sc.i_xi(r.varpi);
  }
  return r;
}

TermPtr obstruction(const BrstScene& sc, const Dressing& u) {
  return sc.Sigma(u.u) - sc.S(u.u) - sc.lie(u.u);
}

FormalDressing define_formal_dressing(int m, int n, bool tensorial, bool matter) {
  if (tensorial && n != m) throw DimensionError("tensorial dressing needs size == dim");
  BrstScene base = define_yang_mills(m, n, matter);
  std::string inv = "U" + std::to_string(n);
  register_inverse(inv, "u", n);
  MatrixExpr u(n, n), U(n, n), w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      u.at(i, j) = Expr::gen(field("u", {i, j}));
      U.at(i, j) = Expr::gen(inverse_component(inv, {i, j}));
      w.at(i, j) = Expr::gen(ghost("w", {i, j}));
    }
  }
  TermPtr ut = leaf(u), wt = leaf(w);
  read_component_rules(*base.s, u, expand(-(base.ghost_t * ut) + ut * wt));
  read_component_rules(*base.s, w, expand(-(wt * wt)));
  append_roster(base, u);
  append_roster(base, w);
  FormalDressing fd{shift_algebra(base), {"formal", ut, leaf(U)}, w};
  BrstScene& sc = fd.scene;
  TermPtr su = sc.S(ut) + sc.lie(ut);
  if (tensorial) su = su + ut * leaf(sc.v_xi);
  read_component_rules(*sc.sigma, u, expand(su));
  // tensorial: w + v_xi is the right ghost, so sigma w = -(w+v_xi)^2 + L(w+v_xi) - sigma v_xi
  TermPtr sw = sc.S(wt) + sc.lie(wt);
  if (tensorial) sw = sw - commutator(wt, leaf(sc.v_xi));
  read_component_rules(*sc.sigma, w, expand(sw));
  return fd;
}

}  // namespace brst
