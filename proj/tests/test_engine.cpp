#include "doctest.h"

#include "brst/scene.hpp"

using namespace brst;

TEST_CASE("Yang-Mills s is nilpotent and the Russian formula reproduces it") {
  auto sc = define_yang_mills(2, 2, true);
  CHECK(check_nilpotency(sc, "s", "ym.s_nilpotent", "").pass);
  auto rus = expand_horizontality(sc, Horizontality::Russian, "ym.russian", "");
  CHECK(rus.size() == 3);
  for (auto& [b, r] : rus) CHECK_MESSAGE(r.pass, r.identity_id << " " << r.residual);
  auto mat = expand_horizontality(sc, Horizontality::Matter, "ym.matter", "");
  for (auto& [b, r] : mat) CHECK_MESSAGE(r.pass, r.identity_id << " " << r.residual);
}

TEST_CASE("ghost rule set to zero breaks nilpotency on A") {
  auto sc = define_yang_mills(2, 2, false);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sc.s->set_rule(ghost("v", {i, j}), Expr());
  auto rep = check_nilpotency(sc, "s", "ym.s_nilpotent", "");
  CHECK_FALSE(rep.pass);
  CHECK(rep.residual.find("A[") != std::string::npos);
}

TEST_CASE("shifted algebra") {
  auto sc = shift_algebra(define_yang_mills(2, 2, true));
  CHECK(check_nilpotency(sc, "sigma", "ym.sigma_nilpotent", "").pass);
  auto rus = expand_horizontality(sc, Horizontality::ShiftedRussian, "ym.shifted_russian", "");
  CHECK(rus.size() == 3);
  for (auto& [b, r] : rus) CHECK_MESSAGE(r.pass, r.identity_id << " " << r.residual);
  auto mat = expand_horizontality(sc, Horizontality::ShiftedMatter, "ym.shifted_matter", "");
  for (auto& [b, r] : mat) CHECK_MESSAGE(r.pass, r.identity_id << " " << r.residual);
}

TEST_CASE("shifting commutes with formal dressing under condition (A)") {
  auto fd = define_formal_dressing(2, 2, false, true);
  auto& sc = fd.scene;
  auto dr = dress_algebra(sc, fd.u);
  auto ctx = formal_context(sc, CheckMode::Symbolic, 1, "t");
  Identity id{"a", "", dr.ghost_prime, dr.ghost_hat_shifted, {}, ""};
  auto rep = check_identity(id, ctx);
  CHECK_MESSAGE(rep.pass, rep.residual << rep.error);
  CHECK(rep.tier == "symbolic");
  // dressed algebra
  Identity sv{"b", "", sc.S(dr.varpi), -sc.d(dr.ghost) - commutator(dr.varpi, dr.ghost), {}, ""};
  auto r2 = check_identity(sv, ctx);
  CHECK_MESSAGE(r2.pass, r2.residual << r2.error);
}

TEST_CASE("tensorial dressing picks up v_xi") {
  auto fd = define_formal_dressing(2, 2, true, false);
  auto& sc = fd.scene;
  auto dr = dress_algebra(sc, fd.u);
  auto ctx = formal_context(sc, CheckMode::Symbolic, 1, "t");
  Identity id{"a", "", dr.ghost_prime, dr.ghost_hat_shifted + leaf(sc.v_xi), {}, ""};
  auto rep = check_identity(id, ctx);
  CHECK_MESSAGE(rep.pass, rep.residual << rep.error);
  CHECK(rep.tier == "symbolic");
  Identity bad{"b", "", dr.ghost_prime, dr.ghost_hat_shifted, {}, ""};
  CHECK_FALSE(check_identity(bad, ctx).pass);
  CHECK(check_nilpotency(sc, "sigma", "x", "").pass);
}
