#include "fairdiv/opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairdiv/fairness.hpp"

namespace fairdiv {

LinearProgram build_fair_lp(const DiscreteProblem& p) {
  const DiscreteProblem q = normalize_problem(p);
  const int n = q.agents();
  const int k = static_cast<int>(q.states.size());
  const int nv = k * n;
  const auto var = [n](int state, int agent) { return state * n + agent; };

  LinearProgram lp;
  lp.sense = q.kind == ObjectKind::Good ? LinearProgram::Sense::Maximize
                                        : LinearProgram::Sense::Minimize;
  lp.objective.assign(static_cast<size_t>(nv), 0.0);
  lp.lower.assign(static_cast<size_t>(nv), 0.0);
  lp.upper.assign(static_cast<size_t>(nv), 1.0);

  for (int s = 0; s < k; ++s)
    for (int i = 0; i < n; ++i)
      lp.objective[static_cast<size_t>(var(s, i))] =
          q.states[static_cast<size_t>(s)].prob * q.states[static_cast<size_t>(s)].values[static_cast<size_t>(i)];

  for (int s = 0; s < k; ++s) {
    std::vector<double> row(static_cast<size_t>(nv), 0.0);
    for (int i = 0; i < n; ++i) row[static_cast<size_t>(var(s, i))] = 1.0;
    lp.eq_rows.push_back(std::move(row));
    lp.eq_rhs.push_back(1.0);
  }

  // Fair share per agent, written as <= rows.
  const double fair = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<size_t>(nv), 0.0);
    for (int s = 0; s < k; ++s)
      row[static_cast<size_t>(var(s, i))] =
          q.states[static_cast<size_t>(s)].prob * q.states[static_cast<size_t>(s)].values[static_cast<size_t>(i)];
    if (q.kind == ObjectKind::Good) {
      for (double& v : row) v = -v;
      lp.le_rows.push_back(std::move(row));
      lp.le_rhs.push_back(-fair);
    } else {
      lp.le_rows.push_back(std::move(row));
      lp.le_rhs.push_back(fair);
    }
  }
  return lp;
}

OptimalFairResult optimal_fair_rule(const DiscreteProblem& p) {
  const DiscreteProblem q = normalize_problem(p);
  const LinearProgram lp = build_fair_lp(q);
  const SimplexResult sol = simplex_solve(lp);

  const int n = q.agents();
  const int k = static_cast<int>(q.states.size());
  OptimalFairResult out;
  out.rule.allocations.reserve(static_cast<size_t>(k));
  for (int s = 0; s < k; ++s) {
    Allocation a{std::vector<double>(static_cast<size_t>(n), 0.0)};
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = sol.x[static_cast<size_t>(s * n + i)];
      if (v < 0.0 && v > -1e-9) v = 0.0;
      a.shares[static_cast<size_t>(i)] = v;
      sum += v;
    }
    if (sum > 0.0)
      for (double& v : a.shares) v /= sum;
    out.rule.allocations.push_back(std::move(a));
  }

  double value = 0.0;
  for (int s = 0; s < k; ++s)
    for (int i = 0; i < n; ++i)
      value += q.states[static_cast<size_t>(s)].prob * out.rule.allocations[static_cast<size_t>(s)][i] *
               q.states[static_cast<size_t>(s)].values[static_cast<size_t>(i)];
  out.social_value = value;
  return out;
}

double unconstrained_optimum(const DiscreteProblem& p) {
  const DiscreteProblem q = normalize_problem(p);
  double total = 0.0;
  for (const auto& s : q.states) {
    double best = s.values.front();
    for (double v : s.values)
      best = q.kind == ObjectKind::Good ? std::max(best, v) : std::min(best, v);
    total += s.prob * best;
  }
  return total;
}

double pi_ratio(const DiscreteProblem& p, const RuleId& rule) {
  const double s = social_value(p, rule);
  const double opt = unconstrained_optimum(p);
  const double den = p.kind == ObjectKind::Good ? s : opt;
  if (!(den > 0.0))
    throw Error(ErrorCode::DegenerateDenominator, "efficiency ratio has a zero denominator");
  return p.kind == ObjectKind::Good ? opt / s : s / opt;
}

}  // namespace fairdiv
