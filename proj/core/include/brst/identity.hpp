#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "brst/term.hpp"

namespace brst {

enum class CheckMode { Symbolic, Randomized, Both };
const char* to_string(CheckMode m);
CheckMode parse_mode(const std::string& s);

/// One evaluation point: values for even generators plus whatever a scene's
/// oracle needs to build right-hand sides independently.
class TrialPoint : public Valuation {
 public:
  explicit TrialPoint(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const { return seed_; }
  /// Short description of the point for traces.
  virtual std::string describe() const { return {}; }
  /// Evaluator shared by every identity checked at this point.
  Evaluator& evaluator() {
    if (!ev_) ev_ = std::make_unique<Evaluator>(*this);
    return *ev_;
  }

 private:
  std::uint64_t seed_;
  std::unique_ptr<Evaluator> ev_;
};

/// Independent random rational per generator (hash of seed and key);
/// inverse generators get true matrix inverses of their source fields.
class RandomJetPoint : public TrialPoint {
 public:
  explicit RandomJetPoint(std::uint64_t seed) : TrialPoint(seed) {}
  const Rational* value(GenId g) override;

 private:
  void fill_inverse(const std::string& inverse_name);
  std::map<GenId, Rational> cache_;
};

using TrialFactory = std::function<std::shared_ptr<TrialPoint>(std::uint64_t seed)>;
/// Right-hand side computed by an oracle at a trial point (already evaluated).
using OracleSide = std::function<MatrixExpr(TrialPoint&)>;

struct Identity {
  std::string id;
  std::string anchor;
  TermPtr lhs;
  TermPtr rhs;          // may be null when `oracle` is set
  OracleSide oracle;    // independent path; forces randomized evaluation
  std::string note;
  int display_terms = 0;  // sign-flippable terms of the oracle display
};

struct TrialRecord {
  std::uint64_t seed = 0;
  bool pass = false;
  std::size_t residual_terms = 0;
  std::string point;
  std::string lhs_text;  // filled only when tracing
  std::string rhs_text;
};

struct IdentityReport {
  std::string identity_id;
  std::string anchor;
  CheckMode mode = CheckMode::Symbolic;
  std::string tier;  // "symbolic", "randomized" or "symbolic+randomized"
  bool pass = false;
  std::size_t residual_term_count = 0;
  std::string residual;  // pretty-printed on failure (truncated)
  std::vector<TrialRecord> trials;
  double elapsed_ms = 0;
  std::string note;
  std::string error;
};

struct CheckContext {
  CheckMode mode = CheckMode::Symbolic;
  int trials = 5;
  std::uint64_t base_seed = 0;
  std::string scene_key;
  std::size_t symbolic_budget = 200000;
  bool trace = false;
  TrialFactory factory;
};

/// Mixes seed material (splitmix64 finaliser).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t hash_string(const std::string& s);
std::uint64_t trial_seed(const CheckContext& ctx, int trial);

/// Rewrites with U X = 1 (or X U = 1 when `left` is false) for every
/// registered inverse U of a field matrix X, eliminating products
/// U_{i,n-1} X_{n-1,j} (resp. X_{i,n-1} U_{n-1,j}) of jet-free components.
/// Sound: a zero result proves e == 0 on invertible X.
Expr reduce_inverse_relations(const Expr& e, bool left = true);

IdentityReport check_identity(const Identity& id, const CheckContext& ctx);

/// Shared per-seed point cache so identities in one scene reuse oracle work.
class TrialCache {
 public:
  explicit TrialCache(TrialFactory make) : make_(std::move(make)) {}
  std::shared_ptr<TrialPoint> get(std::uint64_t seed);
  TrialFactory factory() {
    return [this](std::uint64_t s) { return get(s); };
  }

 private:
  TrialFactory make_;
  std::map<std::uint64_t, std::shared_ptr<TrialPoint>> points_;
};

}  // namespace brst
