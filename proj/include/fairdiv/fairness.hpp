#pragma once

#include <cstdint>
#include <optional>

#include "fairdiv/rules.hpp"

namespace fairdiv {

/// Expected normalized (dis)utilities of a rule on a problem, with the
/// fair-share verdict per agent. Margins are per_agent[i] - 1/n, so for a good
/// fair share means margin >= 0 and for a bad margin <= 0.
struct WelfareReport {
  ObjectKind kind = ObjectKind::Good;
  std::vector<double> per_agent;
  double social_value = 0.0;
  std::vector<bool> fs_ok;
  std::vector<double> fs_margin;

  bool fs_holds() const {
    for (bool ok : fs_ok)
      if (!ok) return false;
    return true;
  }
};

/// Fair-share floor (good) or cap (bad) on agent i's share at profile x:
/// max{1/n + theta/(n-1) (1 - mean/x_i), 0} resp.
/// min{1/n + theta/(n-1) (mean/x_i - 1), 1}, with the 1/0 = +inf convention.
double fair_share_bound(const ValueProfile& x, int agent, double theta, ObjectKind kind);

/// Normalizes the problem, applies the rule statewise, and returns each
/// agent's expected normalized (dis)utility.
std::vector<double> agent_expected_values(const DiscreteProblem& p, const RuleId& rule);

double social_value(const DiscreteProblem& p, const RuleId& rule);

WelfareReport verify_fair_share(const DiscreteProblem& p, const RuleId& rule, double tol = 1e-9);

enum class DominationOutcome {
  DominatesWeakly,   // first rule never worse, strictly better somewhere
  DominatedWeakly,   // mirror case
  Equal,             // coincide on every probe
  Incomparable,      // strict wins in both directions
  NoViolationFound,  // never worse, but no strict witness either
};

struct SamplingPlan {
  int grid_points_per_axis = 21;  // tensor grid over the simplex, used for n <= 4
  int random_profiles = 10000;
  std::uint64_t seed = 12345;
  std::vector<ValueProfile> extra_profiles;
  double tie_perturbation = 1e-9;
  double strict_margin = 1e-9;
  double equal_tolerance = 1e-12;
};

/// Witnesses are simplex-normalized probe profiles; the lexicographically
/// smallest qualifying probe is reported so the result does not depend on
/// evaluation order.
struct DominationVerdict {
  DominationOutcome outcome = DominationOutcome::Equal;
  std::optional<ValueProfile> witness_first_better;
  std::optional<ValueProfile> witness_second_better;
  long long probes = 0;
  long long first_strict_wins = 0;
  long long second_strict_wins = 0;
  double max_abs_gap = 0.0;
};

/// Compares realized social values of two rules over a deterministic probe set
/// (grid + seeded random profiles + caller-supplied profiles, with near-tie
/// perturbations). A sampled check: "no violation" is weaker than a proof.
DominationVerdict dominates(const RuleId& a, const RuleId& b, ObjectKind kind, int n,
                            const SamplingPlan& plan = {});

const char* domination_outcome_name(DominationOutcome o);

}  // namespace fairdiv
