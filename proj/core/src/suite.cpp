#include "brst/suite.hpp"

#include <chrono>

namespace brst {

int fault_term(const std::string& fault, const std::string& id) {
  auto hash = fault.rfind('#');
  if (hash == std::string::npos || fault.substr(0, hash) != id) return -1;
  return std::stoi(fault.substr(hash + 1));
}

namespace {

bool selected(const SuiteOptions& o, const std::string& id) {
  if (o.only.empty()) return true;
  for (const auto& p : o.only)
    if (id.compare(0, p.size(), p) == 0) return true;
  return false;
}

bool batch_selected(const SuiteOptions& o, const std::string& prefix) {
  if (o.only.empty()) return true;
  for (const auto& p : o.only)
    if (prefix.compare(0, p.size(), p) == 0 || p.compare(0, prefix.size(), prefix) == 0) return true;
  return false;
}

}  // namespace

std::vector<IdentityReport> run_suite(const Suite& suite, const SuiteOptions& opts) {
  std::vector<IdentityReport> out;
  for (const auto& [id, fn] : suite.extra) {
    if (!selected(opts, id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    IdentityReport r = fn();
    r.identity_id = id;
    r.mode = opts.mode;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  for (const auto& [prefix, fn] : suite.batches) {
    if (!batch_selected(opts, prefix)) continue;
    auto t0 = std::chrono::steady_clock::now();
    auto reps = fn();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : reps) {
      if (!selected(opts, r.identity_id)) continue;
      r.mode = opts.mode;
      r.elapsed_ms = ms / static_cast<double>(reps.size());
      out.push_back(std::move(r));
    }
  }
  TrialCache cache(suite.factory);
  CheckContext ctx;
  ctx.mode = opts.mode;
  ctx.trials = opts.trials;
  ctx.base_seed = opts.seed;
  ctx.scene_key = suite.key;
  ctx.symbolic_budget = opts.symbolic_budget;
  ctx.trace = opts.trace;
  ctx.factory = cache.factory();
  for (const auto& id : suite.identities(opts)) {
    if (!selected(opts, id.id)) continue;
    out.push_back(check_identity(id, ctx));
  }
  return out;
}

std::vector<FaultProbe> sweep_display_faults(const Suite& suite, const SuiteOptions& opts) {
  SuiteOptions clean = opts;
  clean.fault.clear();
  std::vector<Identity> base = suite.identities(clean);
  TrialCache cache(suite.factory);
  CheckContext ctx;
  ctx.mode = CheckMode::Randomized;
  ctx.trials = opts.trials;
  ctx.base_seed = opts.seed;
  ctx.scene_key = suite.key;
  ctx.factory = cache.factory();
  std::vector<FaultProbe> out;
  for (const auto& id : base) {
    if (!id.oracle || id.display_terms == 0 || !selected(opts, id.id)) continue;
    for (int k = 0; k < id.display_terms; ++k) {
      SuiteOptions faulty = clean;
      faulty.fault = id.id + "#" + std::to_string(k);
      Identity probe = id;
      for (auto& f : suite.identities(faulty))
        if (f.id == id.id) probe.oracle = f.oracle;
      IdentityReport r = check_identity(probe, ctx);
      FaultProbe fp{id.id, k, !r.pass, 0};
      for (const auto& t : r.trials) fp.failing_trials += t.pass ? 0 : 1;
      out.push_back(fp);
    }
  }
  return out;
}

}  // namespace brst
