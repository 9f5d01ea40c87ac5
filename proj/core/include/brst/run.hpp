#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brst/identity.hpp"
#include "brst/script.hpp"

namespace brst {

struct RunOptions {
  std::uint64_t seed = 0;
  std::string seed_source = "default";  // "default", "env" or "flag"
  CheckMode mode = CheckMode::Symbolic;
  int trials = 5;
  int jet_order = 4;
  std::string fault;  // applied to every check unless the check sets its own
  bool timings = false;  // elapsed times in reports (breaks byte identity)
  bool trace = false;
};

struct SceneMeta {
  std::string name, kind;
  int m = 0, n = 0;
  bool normal = false;
  bool shifted = false;
  std::vector<std::string> dressings;
  std::string eta, riemann_convention;
  std::vector<std::string> header;
};

struct ScopedReport {
  std::string scene;
  IdentityReport report;
};

struct RunReport {
  std::string schema, version;
  std::uint64_t seed = 0;
  std::string seed_source;
  CheckMode mode = CheckMode::Symbolic;
  int trials = 5;
  int jet_order = 4;
  bool timings = false;
  std::vector<SceneMeta> scenes;
  std::vector<ScopedReport> identities;  // sorted by (scene, identity_id)
  std::size_t passed = 0, failed = 0;
  bool pass = false;
  double elapsed_ms = 0;  // only with timings
};

struct ReportRequest {
  std::string format, path;
};

struct Execution {
  RunReport report;
  std::vector<ReportRequest> outputs;
};

/// Runs the directives in order. Engine failures are rethrown as
/// ScriptError at the originating statement.
Execution execute_script(const script::Ast& ast, const RunOptions& opts);

/// Built-in script for `verify` (kind: gr, conformal or ym).
std::string builtin_script(const std::string& kind, int dim, bool normal);

std::string to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);
std::string to_markdown(const RunReport& r);

struct CatalogEntry {
  std::string id, anchor, note, suite, check;  // check: "symbolic", "oracle", "nilpotency" or "expansion"
  int display_terms = 0;
};
/// Every identity the suites of a kind can report (all point kinds).
std::vector<CatalogEntry> identity_catalog(const std::string& kind);

}  // namespace brst
