#pragma once

#include <functional>
#include <string>
#include <vector>

#include "brst/identity.hpp"

namespace brst {

struct SuiteOptions {
  CheckMode mode = CheckMode::Symbolic;
  std::uint64_t seed = 0;
  int trials = 5;
  bool trace = false;
  std::size_t symbolic_budget = 200000;
  /// "<identity id>#<term>": flips the sign of one term of that identity's
  /// oracle display. Empty for none.
  std::string fault;
  /// Identity ids to run (prefix match); empty runs everything.
  std::vector<std::string> only;
};

/// Term index to flip for `id` under `fault`, or -1.
int fault_term(const std::string& fault, const std::string& id);

struct Suite {
  std::string key;  // seeds trial points
  std::vector<std::string> header;  // conventions and limitations for reports
  /// Identities built lazily so oracle displays can see the fault option.
  std::function<std::vector<Identity>(const SuiteOptions&)> identities;
  TrialFactory factory;
  /// Checks that are not lhs = rhs comparisons (nilpotency etc.).
  std::vector<std::pair<std::string, std::function<IdentityReport()>>> extra;
  /// Checks yielding several reports whose ids share the given prefix.
  std::vector<std::pair<std::string, std::function<std::vector<IdentityReport>()>>> batches;
};

std::vector<IdentityReport> run_suite(const Suite& suite, const SuiteOptions& opts);

struct FaultProbe {
  std::string identity_id;
  int term = 0;
  bool detected = false;
  int failing_trials = 0;
};

/// Flips each display term of every selected oracle identity in turn and
/// reruns that identity on shared trial points. `opts.fault` is ignored.
std::vector<FaultProbe> sweep_display_faults(const Suite& suite, const SuiteOptions& opts);

}  // namespace brst
