#include <sstream>

#include "brst/run.hpp"
#include "brst/version.hpp"
#include "json.hpp"

namespace brst {

using json = nlohmann::ordered_json;

namespace {

json trial_json(const TrialRecord& t) {
  json j;
  j["seed"] = t.seed;
  j["pass"] = t.pass;
  j["residual_terms"] = t.residual_terms;
  if (!t.point.empty()) j["point"] = t.point;
  if (!t.lhs_text.empty()) j["lhs"] = t.lhs_text;
  if (!t.rhs_text.empty()) j["rhs"] = t.rhs_text;
  return j;
}

TrialRecord trial_from(const json& j) {
  TrialRecord t;
  t.seed = j.at("seed").get<std::uint64_t>();
  t.pass = j.at("pass").get<bool>();
  t.residual_terms = j.at("residual_terms").get<std::size_t>();
  t.point = j.value("point", "");
  t.lhs_text = j.value("lhs", "");
  t.rhs_text = j.value("rhs", "");
  return t;
}

json identity_json(const ScopedReport& s, bool timings) {
  const IdentityReport& r = s.report;
  json j;
  j["scene"] = s.scene;
  j["identity_id"] = r.identity_id;
  j["anchor"] = r.anchor;
  j["mode"] = to_string(r.mode);
  j["tier"] = r.tier;
  j["status"] = r.pass ? "pass" : "fail";
  j["residual_term_count"] = r.residual_term_count;
  if (!r.residual.empty()) j["residual"] = r.residual;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.error.empty()) j["error"] = r.error;
  if (!r.trials.empty()) {
    json t = json::array();
    for (const auto& tr : r.trials) t.push_back(trial_json(tr));
    j["trials"] = std::move(t);
  }
  if (timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

ScopedReport identity_from(const json& j) {
  ScopedReport s;
  s.scene = j.at("scene").get<std::string>();
  IdentityReport& r = s.report;
  r.identity_id = j.at("identity_id").get<std::string>();
  r.anchor = j.at("anchor").get<std::string>();
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.tier = j.at("tier").get<std::string>();
  r.pass = j.at("status").get<std::string>() == "pass";
  r.residual_term_count = j.at("residual_term_count").get<std::size_t>();
  r.residual = j.value("residual", "");
  r.note = j.value("note", "");
  r.error = j.value("error", "");
  if (j.contains("trials"))
    for (const auto& t : j.at("trials")) r.trials.push_back(trial_from(t));
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return s;
}

}  // namespace

std::string to_json(const RunReport& r) {
  json j;
  j["schema"] = r.schema;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["seed_source"] = r.seed_source;
  j["mode"] = to_string(r.mode);
  j["trials"] = r.trials;
  j["jet_order"] = r.jet_order;
  j["timings"] = r.timings;
  json scenes = json::array();
  for (const auto& s : r.scenes) {
    json o;
    o["name"] = s.name;
    o["kind"] = s.kind;
    o["m"] = s.m;
    o["n"] = s.n;
    o["normal"] = s.normal;
    o["shifted"] = s.shifted;
    o["dressings"] = s.dressings;
    o["eta"] = s.eta;
    o["riemann_convention"] = s.riemann_convention;
    o["header"] = s.header;
    scenes.push_back(std::move(o));
  }
  j["scenes"] = std::move(scenes);
  json ids = json::array();
  for (const auto& s : r.identities) ids.push_back(identity_json(s, r.timings));
  j["identities"] = std::move(ids);
  j["summary"] = {{"total", r.identities.size()}, {"passed", r.passed}, {"failed", r.failed}};
  j["status"] = r.pass ? "pass" : "fail";
  if (r.timings) j["elapsed_ms"] = r.elapsed_ms;
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j = json::parse(text);
  RunReport r;
  r.schema = j.at("schema").get<std::string>();
  if (r.schema != std::string(kReportSchema)) throw std::runtime_error("unsupported report schema " + r.schema);
  r.version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.seed_source = j.at("seed_source").get<std::string>();
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.trials = j.at("trials").get<int>();
  r.jet_order = j.at("jet_order").get<int>();
  r.timings = j.at("timings").get<bool>();
  for (const auto& o : j.at("scenes")) {
    SceneMeta s;
    s.name = o.at("name").get<std::string>();
    s.kind = o.at("kind").get<std::string>();
    s.m = o.at("m").get<int>();
    s.n = o.at("n").get<int>();
    s.normal = o.at("normal").get<bool>();
    s.shifted = o.at("shifted").get<bool>();
    s.dressings = o.at("dressings").get<std::vector<std::string>>();
    s.eta = o.at("eta").get<std::string>();
    s.riemann_convention = o.at("riemann_convention").get<std::string>();
    s.header = o.at("header").get<std::vector<std::string>>();
    r.scenes.push_back(std::move(s));
  }
  for (const auto& i : j.at("identities")) r.identities.push_back(identity_from(i));
  r.passed = j.at("summary").at("passed").get<std::size_t>();
  r.failed = j.at("summary").at("failed").get<std::size_t>();
  r.pass = j.at("status").get<std::string>() == "pass";
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return r;
}

std::string to_markdown(const RunReport& r) {
  std::ostringstream os;
  os << "# brstv report\n\n";
  os << "- status: **" << (r.pass ? "pass" : "fail") << "** (" << r.passed << " passed, " << r.failed << " failed)\n";
  os << "- version " << r.version << ", schema " << r.schema << "\n";
  os << "- seed " << r.seed << " (" << r.seed_source << "), mode " << to_string(r.mode) << ", trials " << r.trials
     << ", jet order " << r.jet_order << "\n";
  if (r.timings) os << "- elapsed " << static_cast<long>(r.elapsed_ms) << " ms\n";
  for (const auto& s : r.scenes) {
    os << "\n## Scene `" << s.name << "`: " << s.kind << ", m = " << s.m;
    if (s.kind == "yang_mills") os << ", n = " << s.n;
    if (s.kind == "conformal") os << (s.normal ? ", normal points" : ", generic points");
    os << "\n\n";
    if (s.eta != "none") os << "- eta = " << s.eta << "\n- " << s.riemann_convention << "\n";
    for (const auto& h : s.header) os << "- " << h << "\n";
    os << "\n| identity | status | tier | anchor |\n|---|---|---|---|\n";
    for (const auto& i : r.identities) {
      if (i.scene != s.name) continue;
      os << "| `" << i.report.identity_id << "` | " << (i.report.pass ? "pass" : "**FAIL**") << " | " << i.report.tier
         << " | " << i.report.anchor << " |\n";
    }
  }
  bool any = false;
  for (const auto& i : r.identities) {
    if (i.report.pass) continue;
    if (!any) os << "\n## Failures\n";
    any = true;
    const auto& rep = i.report;
    os << "\n### `" << i.scene << "` / `" << rep.identity_id << "`\n\n";
    if (!rep.anchor.empty()) os << "Anchor: " << rep.anchor << "\n\n";
    os << "Residual terms: " << rep.residual_term_count << "\n\n";
    if (!rep.error.empty()) os << "Error: " << rep.error << "\n\n";
    if (!rep.residual.empty()) os << "```\n" << rep.residual << "\n```\n";
    for (const auto& t : rep.trials)
      if (!t.pass) os << "- trial seed " << t.seed << ": " << t.residual_terms << " residual terms\n";
  }
  return os.str();
}

}  // namespace brst
