#include "fairdiv/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fairdiv/rng.hpp"

namespace fairdiv {

double fair_share_bound(const ValueProfile& x, int agent, double theta, ObjectKind kind) {
  if (!(theta >= 0.0) || theta > 1.0) throw Error(ErrorCode::InvalidTheta, "theta must be in [0,1]");
  require_profile(x);
  const int n = x.size();
  if (agent < 0 || agent >= n) throw Error(ErrorCode::InvalidProfile, "agent index out of range");

  const double mean = stable_sum(x.values) / n;
  const double xi = x[agent];
  if (kind == ObjectKind::Good) {
    if (mean == 0.0) return 1.0 / n;  // profile on the ray through 0
    if (xi == 0.0) return 0.0;        // 1/0 = +inf
    return std::max(1.0 / n + theta / (n - 1) * (1.0 - mean / xi), 0.0);
  }
  if (mean == 0.0) return 1.0 / n;
  if (xi == 0.0) return 1.0;
  return std::min(1.0 / n + theta / (n - 1) * (mean / xi - 1.0), 1.0);
}

std::vector<double> agent_expected_values(const DiscreteProblem& p, const RuleId& rule) {
  const DiscreteProblem q = normalize_problem(p);
  const int n = q.agents();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (const auto& s : q.states) {
    const Allocation a = allocate(rule, ValueProfile{s.values}, q.kind);
    for (int i = 0; i < n; ++i)
      out[static_cast<size_t>(i)] += s.prob * a[i] * s.values[static_cast<size_t>(i)];
  }
  return out;
}

double social_value(const DiscreteProblem& p, const RuleId& rule) {
  const auto vals = agent_expected_values(p, rule);
  return stable_sum(vals);
}

WelfareReport verify_fair_share(const DiscreteProblem& p, const RuleId& rule, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::DomainError, "tolerance must be nonnegative");
  WelfareReport r;
  r.kind = p.kind;
  r.per_agent = agent_expected_values(p, rule);
  r.social_value = stable_sum(r.per_agent);
  const int n = static_cast<int>(r.per_agent.size());
  const double fair = 1.0 / n;
  r.fs_ok.resize(static_cast<size_t>(n));
  r.fs_margin.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v = r.per_agent[static_cast<size_t>(i)];
    r.fs_margin[static_cast<size_t>(i)] = v - fair;
    r.fs_ok[static_cast<size_t>(i)] =
        (p.kind == ObjectKind::Good) ? (v >= fair - tol) : (v <= fair + tol);
  }
  return r;
}

const char* domination_outcome_name(DominationOutcome o) {
  switch (o) {
    case DominationOutcome::DominatesWeakly: return "dominates-weakly";
    case DominationOutcome::DominatedWeakly: return "dominated-weakly";
    case DominationOutcome::Equal: return "equal";
    case DominationOutcome::Incomparable: return "incomparable";
    case DominationOutcome::NoViolationFound: return "no-violation-found";
  }
  return "unknown";
}

namespace {

// All compositions of (points_per_axis - 1) into n parts, scaled onto the simplex.
void push_simplex_grid(std::vector<ValueProfile>& probes, int n, int points_per_axis) {
  const int total = points_per_axis - 1;
  std::vector<double> probe(static_cast<size_t>(n));
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      probe[static_cast<size_t>(pos)] = static_cast<double>(remaining) / total;
      probes.push_back(ValueProfile{probe});
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      probe[static_cast<size_t>(pos)] = static_cast<double>(k) / total;
      rec(pos + 1, remaining - k);
    }
  };
  rec(0, total);
}

ValueProfile to_simplex(const ValueProfile& x) {
  const double s = stable_sum(x.values);
  if (s <= 0.0) return x;
  ValueProfile y = x;
  for (double& v : y.values) v /= s;
  return y;
}

bool has_tie(const ValueProfile& x) {
  for (size_t i = 0; i < x.values.size(); ++i)
    for (size_t j = i + 1; j < x.values.size(); ++j)
      if (x.values[i] == x.values[j]) return true;
  return false;
}

bool lex_less(const ValueProfile& a, const ValueProfile& b) {
  return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(),
                                      b.values.end());
}

}  // namespace

DominationVerdict dominates(const RuleId& a, const RuleId& b, ObjectKind kind, int n,
                            const SamplingPlan& plan) {
  if (!rule_compatible(a, kind) || !rule_compatible(b, kind))
    throw Error(ErrorCode::RuleKindMismatch, "rule is not defined for this object kind");
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");

  std::vector<ValueProfile> probes;
  probes.push_back(ValueProfile{std::vector<double>(static_cast<size_t>(n), 1.0 / n)});
  if (n <= 4 && plan.grid_points_per_axis >= 2)
    push_simplex_grid(probes, n, plan.grid_points_per_axis);

  CounterRng rng(plan.seed, 0);
  for (int k = 0; k < plan.random_profiles; ++k) {
    std::vector<double> v(static_cast<size_t>(n));
    double s = 0.0;
    for (double& y : v) {
      y = rng.exponential();  // Dirichlet(1,...,1) after normalization
      s += y;
    }
    for (double& y : v) y /= s;
    probes.push_back(ValueProfile{v});
  }
  for (const auto& x : plan.extra_profiles) probes.push_back(to_simplex(x));

  // perturb tied probes to land on both sides of each discontinuity
  const size_t base_count = probes.size();
  if (plan.tie_perturbation > 0.0) {
    for (size_t k = 0; k < base_count; ++k) {
      if (!has_tie(probes[k])) continue;
      ValueProfile up = probes[k], down = probes[k];
      for (size_t i = 1; i < up.values.size(); ++i) {
        up.values[i] += plan.tie_perturbation * static_cast<double>(i);
        down.values[i] = std::max(down.values[i] - plan.tie_perturbation * static_cast<double>(i), 0.0);
      }
      probes.push_back(up);
      probes.push_back(down);
    }
  }

  const long long m = static_cast<long long>(probes.size());
  std::vector<double> advantage(static_cast<size_t>(m));

#pragma omp parallel for schedule(static)
  for (long long k = 0; k < m; ++k) {
    const ValueProfile& x = probes[static_cast<size_t>(k)];
    const Allocation aa = allocate(a, x, kind);
    const Allocation ab = allocate(b, x, kind);
    double wa = 0.0, wb = 0.0;
    for (int i = 0; i < n; ++i) {
      wa += aa[i] * x[i];
      wb += ab[i] * x[i];
    }
    // positive = first rule generates more welfare (good) / less cost (bad)
    advantage[static_cast<size_t>(k)] = (kind == ObjectKind::Good) ? wa - wb : wb - wa;
  }

  DominationVerdict v;
  v.probes = m;
  const ValueProfile* first_witness = nullptr;
  const ValueProfile* second_witness = nullptr;
  for (long long k = 0; k < m; ++k) {
    const double adv = advantage[static_cast<size_t>(k)];
    v.max_abs_gap = std::max(v.max_abs_gap, std::fabs(adv));
    if (adv > plan.strict_margin) {
      ++v.first_strict_wins;
      if (!first_witness || lex_less(probes[static_cast<size_t>(k)], *first_witness))
        first_witness = &probes[static_cast<size_t>(k)];
    } else if (adv < -plan.strict_margin) {
      ++v.second_strict_wins;
      if (!second_witness || lex_less(probes[static_cast<size_t>(k)], *second_witness))
        second_witness = &probes[static_cast<size_t>(k)];
    }
  }
  if (first_witness) v.witness_first_better = *first_witness;
  if (second_witness) v.witness_second_better = *second_witness;

  if (v.first_strict_wins > 0 && v.second_strict_wins > 0)
    v.outcome = DominationOutcome::Incomparable;
  else if (v.first_strict_wins > 0)
    v.outcome = DominationOutcome::DominatesWeakly;
  else if (v.second_strict_wins > 0)
    v.outcome = DominationOutcome::DominatedWeakly;
  else if (v.max_abs_gap <= plan.equal_tolerance)
    v.outcome = DominationOutcome::Equal;
  else
    v.outcome = DominationOutcome::NoViolationFound;
  return v;
}

}  // namespace fairdiv
