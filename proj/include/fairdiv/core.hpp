#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairdiv {

enum class ObjectKind { Good, Bad };

inline const char* kind_name(ObjectKind k) { return k == ObjectKind::Good ? "good" : "bad"; }

enum class ErrorCode {
  NegativeValue,
  ProbabilitiesDoNotSumToOne,
  ZeroExpectedValue,
  TooFewAgents,
  EmptyPrior,
  InvalidProfile,
  InvalidTheta,
  InvalidM,
  RuleKindMismatch,
  Infeasible,
  Unbounded,
  IterationLimit,
  QuadratureNonConvergence,
  DomainError,
  NoFiniteT,
  HarmonicMomentInfinite,
  ZeroDeviation,
  DegenerateDenominator,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// One support point of a finite prior: its probability and the value vector.
struct DiscreteState {
  double prob = 0.0;
  std::vector<double> values;
};

/// Finite prior over nonnegative value vectors for a single divisible object.
struct DiscreteProblem {
  ObjectKind kind = ObjectKind::Good;
  std::vector<DiscreteState> states;

  int agents() const { return states.empty() ? 0 : static_cast<int>(states.front().values.size()); }
};

/// One realized vector of normalized (dis)utilities, the input of every rule.
struct ValueProfile {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

/// Point of the agent simplex: one probability share per agent, summing to 1.
struct Allocation {
  std::vector<double> shares;

  int size() const { return static_cast<int>(shares.size()); }
  double operator[](int i) const { return shares[static_cast<size_t>(i)]; }
};

/// Order statistics of a profile with tie bookkeeping.
/// `sorted` is ascending, ties kept in agent-index order; `perm[r]` is the agent
/// holding rank r; `level_sets[l]` lists the agents at the l-th distinct level.
struct OrderStats {
  std::vector<double> sorted;
  std::vector<int> perm;
  std::vector<double> levels;
  std::vector<std::vector<int>> level_sets;
  std::vector<int> top_set;
};

inline constexpr double kProbabilityTol = 1e-12;

/// Checks all prior invariants and returns the problem unchanged.
const DiscreteProblem& validate_problem(const DiscreteProblem& p);

/// Divides each agent's values by that agent's expected value, so that every
/// expectation becomes 1. Probabilities are untouched.
DiscreteProblem normalize_problem(const DiscreteProblem& p);

/// Expected value per agent under the prior.
std::vector<double> agent_means(const DiscreteProblem& p);

OrderStats order_stats(const ValueProfile& x);

/// Sum of the entries accumulated in ascending order, so the result does not
/// depend on the order in which the coordinates were supplied.
double stable_sum(std::span<const double> xs);

bool all_equal(std::span<const double> xs);

void require_profile(const ValueProfile& x);

}  // namespace fairdiv
