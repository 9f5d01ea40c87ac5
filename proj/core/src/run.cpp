#include "brst/run.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "brst/conformal.hpp"
#include "brst/gr.hpp"
#include "brst/version.hpp"
#include "brst/ym.hpp"

namespace brst {

using script::ScriptError;
using script::Span;

namespace {

const char* kEta = "diag(-1, 1, ..., 1)";
const char* kRiemann =
    "Gamma^rho_{mu nu} is the dx^mu coefficient of entry (rho, nu); "
    "R = 1/2 R^rho_{nu, mu sigma} dx^mu dx^sigma";

struct JetScope {
  int saved;
  explicit JetScope(int order) : saved(jet_truncation()) { set_jet_truncation(order); }
  ~JetScope() { set_jet_truncation(saved); }
};

struct SceneState {
  script::SceneDecl decl;
  int m = 0, n = 0;
  bool normal = false;
  bool shifted = false;
  std::vector<std::string> dressings;
  std::vector<script::RuleDecl> rules;
  std::optional<GrScene> gr;
  std::optional<ConformalScene> conf;
  std::optional<YmScene> ym;
};

long arg_int(const script::SceneDecl& d, const std::string& key, long dflt) {
  for (const auto& kv : d.args)
    if (kv.key == key) return kv.value.integer;
  return dflt;
}

bool arg_bool(const script::SceneDecl& d, const std::string& key, bool dflt) {
  for (const auto& kv : d.args)
    if (kv.key == key) return kv.value.boolean;
  return dflt;
}

std::string prefix_of(const std::string& kind) {
  if (kind == "gr") return "gr.";
  if (kind == "conformal") return "conf.";
  return "ym.";
}

// YM sections available before shifting or dressing.
bool ym_visible(const SceneState& s, const std::string& id) {
  auto starts = [&](const char* p) { return id.rfind(p, 0) == 0; };
  bool needs_shift = starts("ym.sigma_") || starts("ym.shifted_") || starts("ym.presentation") || starts("ym.dressing");
  if (needs_shift && !s.shifted) return false;
  if (starts("ym.dressing.tensorial"))
    return std::find(s.dressings.begin(), s.dressings.end(), "tensorial") != s.dressings.end();
  if (starts("ym.dressing"))
    return std::find(s.dressings.begin(), s.dressings.end(), "formal") != s.dressings.end();
  return true;
}

void require_ready(const SceneState& s, const Span& span) {
  const auto& k = s.decl.kind;
  const auto& d = s.dressings;
  if (k == "gr") {
    if (!s.shifted || std::find(d.begin(), d.end(), "vielbein") == d.end())
      throw ScriptError("gr scene '" + s.decl.name + "' needs 'shift' and 'dress ... with vielbein' before checks", span);
  } else if (k == "conformal") {
    bool single = std::find(d.begin(), d.end(), "u") != d.end();
    bool staged = d.size() >= 2 && std::find(d.begin(), d.end(), "u1") != d.end() && std::find(d.begin(), d.end(), "u0") != d.end();
    if (!s.shifted || !(single || staged))
      throw ScriptError("conformal scene '" + s.decl.name + "' needs 'shift' and either 'dress ... with u' or u1 then u0 before checks", span);
  }
}

std::vector<IdentityReport> run_checks(SceneState& s, const SuiteOptions& o) {
  const auto& k = s.decl.kind;
  if (k == "gr") {
    if (!s.gr) s.gr = build_gr_scene(s.m);
    return verify_gr_suite(*s.gr, o);
  }
  if (k == "conformal") {
    if (!s.conf) s.conf = build_conformal_scene(s.m, s.normal);
    return verify_conformal_suite(*s.conf, o);
  }
  if (!s.ym) {
    s.ym = build_ym_scene(s.m, s.n);
    auto zero_rules = [&](RuleDerivation& D, const BrstScene& sc, const std::string& op) {
      for (const auto& r : s.rules)
        if (r.op == op)
          for (GenId g : sc.roster)
            if (generator(g).key.name == r.field) D.set_rule(g, Expr());
    };
    zero_rules(*s.ym->scene.s, s.ym->scene, "s");
    // sigma is read from s + L_xi, so it follows the overridden s rules
    s.ym->shifted = shift_algebra(s.ym->scene);
    zero_rules(*s.ym->shifted.sigma, s.ym->shifted, "sigma");
  }
  auto reps = verify_ym_suite(*s.ym, o);
  std::vector<IdentityReport> out;
  for (auto& r : reps)
    if (ym_visible(s, r.identity_id)) out.push_back(std::move(r));
  return out;
}

SceneMeta meta_of(const SceneState& s) {
  SceneMeta m;
  m.name = s.decl.name;
  m.kind = s.decl.kind;
  m.m = s.m;
  m.n = s.n;
  m.normal = s.normal;
  m.shifted = s.shifted;
  m.dressings = s.dressings;
  m.eta = s.decl.kind == "yang_mills" ? "none" : kEta;
  m.riemann_convention = s.decl.kind == "yang_mills" ? "none" : kRiemann;
  if (s.gr) m.header = gr_suite(*s.gr).header;
  if (s.conf) m.header = conformal_suite(*s.conf).header;
  if (s.ym) m.header = ym_suite(*s.ym).header;
  return m;
}

}  // namespace

Execution execute_script(const script::Ast& ast, const RunOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  JetScope jet(opts.jet_order);
  Execution ex;
  RunReport& rr = ex.report;
  rr.schema = kReportSchema;
  rr.version = kVersion;
  rr.seed = opts.seed;
  rr.seed_source = opts.seed_source;
  rr.mode = opts.mode;
  rr.trials = opts.trials;
  rr.jet_order = opts.jet_order;
  rr.timings = opts.timings;
  std::map<std::string, SceneState> scenes;
  std::vector<std::string> order;
  for (const auto& st : ast.statements) {
    try {
      if (auto* d = std::get_if<script::SceneDecl>(&st.node)) {
        SceneState s;
        s.decl = *d;
        s.m = static_cast<int>(arg_int(*d, "dim", d->kind == "conformal" ? 4 : d->kind == "gr" ? 4 : 3));
        s.n = d->kind == "yang_mills" ? static_cast<int>(arg_int(*d, "size", 2)) : 0;
        s.normal = arg_bool(*d, "normal", false);
        scenes[d->name] = std::move(s);
        order.push_back(d->name);
      } else if (auto* r = std::get_if<script::RuleDecl>(&st.node)) {
        auto& s = scenes.at(r->scene);
        if (s.ym) throw ScriptError("rules must precede the first check of scene '" + r->scene + "'", r->scene_span);
        s.rules.push_back(*r);
      } else if (auto* sh = std::get_if<script::ShiftDirective>(&st.node)) {
        auto& s = scenes.at(sh->scene);
        if (s.shifted) throw ScriptError("scene '" + sh->scene + "' is already shifted", sh->scene_span);
        s.shifted = true;
      } else if (auto* dr = std::get_if<script::DressDirective>(&st.node)) {
        auto& s = scenes.at(dr->scene);
        auto& d = s.dressings;
        if (std::find(d.begin(), d.end(), dr->dressing) != d.end())
          throw ScriptError("scene '" + dr->scene + "' is already dressed with " + dr->dressing, dr->scene_span);
        if (dr->dressing == "u0" && std::find(d.begin(), d.end(), "u1") == d.end())
          throw ScriptError("u0 dressing applies after u1", dr->scene_span);
        d.push_back(dr->dressing);
      } else if (auto* c = std::get_if<script::CheckDirective>(&st.node)) {
        auto& s = scenes.at(c->scene);
        require_ready(s, c->scene_span);
        SuiteOptions o;
        o.seed = opts.seed;
        o.mode = opts.mode;
        o.trials = opts.trials;
        o.fault = opts.fault;
        o.trace = opts.trace;
        for (const auto& kv : c->args) {
          if (kv.key == "trials") o.trials = static_cast<int>(kv.value.integer);
          if (kv.key == "mode") o.mode = parse_mode(kv.value.text);
          if (kv.key == "fault") o.fault = kv.value.text;
          if (kv.key == "seed") o.seed = static_cast<std::uint64_t>(kv.value.integer);
        }
        if (!c->suite) {
          if (c->selector.rfind(prefix_of(s.decl.kind), 0) != 0)
            throw ScriptError("identity '" + c->selector + "' does not belong to a " + s.decl.kind + " scene", st.span);
          o.only = {c->selector};
        }
        auto reps = run_checks(s, o);
        if (reps.empty()) throw ScriptError("no identity matches '" + c->selector + "' on scene '" + c->scene + "'", st.span);
        for (auto& r : reps) {
          if (!opts.timings) r.elapsed_ms = 0;
          rr.identities.push_back({c->scene, std::move(r)});
        }
      } else if (auto* rep = std::get_if<script::ReportDirective>(&st.node)) {
        ex.outputs.push_back({rep->format, rep->path});
      }
    } catch (const ScriptError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScriptError(e.what(), st.span);
    }
  }
  for (const auto& name : order) rr.scenes.push_back(meta_of(scenes.at(name)));
  std::stable_sort(rr.identities.begin(), rr.identities.end(), [](const ScopedReport& a, const ScopedReport& b) {
    return std::tie(a.scene, a.report.identity_id) < std::tie(b.scene, b.report.identity_id);
  });
  for (const auto& r : rr.identities) (r.report.pass ? rr.passed : rr.failed)++;
  rr.pass = rr.failed == 0 && !rr.identities.empty();
  if (opts.timings)
    rr.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return ex;
}

std::string builtin_script(const std::string& kind, int dim, bool normal) {
  std::string d = std::to_string(dim);
  if (kind == "gr")
    return "# Poincare geometry with vielbein dressing\n"
           "scene g = gr(dim=" + d + ");\nshift g;\ndress g with vielbein;\ncheck suite g;\n";
  if (kind == "conformal")
    return "# Mobius geometry, two-stage dressing\n"
           "scene c = conformal(dim=" + d + ", normal=" + (normal ? "true" : "false") + ");\n"
           "shift c;\ndress c with u1;\ndress c with u0;\ncheck suite c;\n";
  if (kind == "ym")
    return "# gl(2) gauge theory with matter\n"
           "scene y = yang_mills(dim=" + d + ", size=2);\nshift y;\ndress y with formal;\ndress y with tensorial;\ncheck suite y;\n";
  throw std::invalid_argument("unknown built-in suite '" + kind + "' (expected gr, conformal or ym)");
}

std::vector<CatalogEntry> identity_catalog(const std::string& kind) {
  std::vector<CatalogEntry> out;
  auto add_suite = [&](const Suite& suite, const std::string& name) {
    for (const auto& [id, fn] : suite.extra) out.push_back({id, "", "", name, "nilpotency"});
    for (const auto& [prefix, fn] : suite.batches)
      for (const auto& r : fn()) out.push_back({r.identity_id, r.anchor, "", name, "expansion"});
    SuiteOptions o;
    for (const auto& id : suite.identities(o))
      out.push_back({id.id, id.anchor, id.note, name, id.oracle ? "oracle" : "symbolic", id.display_terms});
  };
  if (kind == "gr") {
    add_suite(gr_suite(build_gr_scene(2)), "gr");
  } else if (kind == "conformal") {
    add_suite(conformal_suite(build_conformal_scene(3, true)), "conformal");
    add_suite(conformal_suite(build_conformal_scene(3, false)), "conformal");
  } else if (kind == "ym") {
    add_suite(ym_suite(build_ym_scene(2, 2)), "ym");
  } else {
    throw std::invalid_argument("unknown suite '" + kind + "'");
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id == b.id; }), out.end());
  return out;
}

}  // namespace brst
