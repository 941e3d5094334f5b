#pragma once

#include "fairdiv/lp.hpp"
#include "fairdiv/rules.hpp"

namespace fairdiv {

/// A prior-dependent rule restricted to the prior's support: one allocation
/// per state.
struct StatewiseRule {
  std::vector<Allocation> allocations;
};

struct OptimalFairResult {
  StatewiseRule rule;
  double social_value = 0.0;  // normalized units
};

/// LP over statewise shares phi_{k,i} in [0,1]: one simplex row per state and
/// one fair-share row per agent (>= 1/n for a good, <= 1/n for a bad), with
/// the expected normalized welfare as objective. Built on the normalized
/// problem.
LinearProgram build_fair_lp(const DiscreteProblem& p);

/// Best fair prior-dependent rule on the prior's support, via the LP above.
OptimalFairResult optimal_fair_rule(const DiscreteProblem& p);

/// Expected max (good) or min (bad) normalized value: the welfare of the
/// unconstrained utilitarian optimum.
double unconstrained_optimum(const DiscreteProblem& p);

/// Efficiency ratio of a rule against the unconstrained optimum:
/// optimum / social value for a good, social value / optimum for a bad.
double pi_ratio(const DiscreteProblem& p, const RuleId& rule);

}  // namespace fairdiv
