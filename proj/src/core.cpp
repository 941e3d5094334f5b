#include "fairdiv/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fairdiv {

double stable_sum(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

bool all_equal(std::span<const double> xs) {
  for (double x : xs)
    if (x != xs[0]) return false;
  return true;
}

void require_profile(const ValueProfile& x) {
  if (x.size() < 2) throw Error(ErrorCode::TooFewAgents, "profile needs at least 2 agents");
  for (double v : x.values) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidProfile, "profile entries must be finite and nonnegative");
  }
}

const DiscreteProblem& validate_problem(const DiscreteProblem& p) {
  if (p.states.empty()) throw Error(ErrorCode::EmptyPrior, "prior has no states");
  const int n = p.agents();
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "problem needs at least 2 agents");

  double prob_sum = 0.0;
  for (const auto& s : p.states) {
    if (static_cast<int>(s.values.size()) != n)
      throw Error(ErrorCode::InvalidProfile, "all states must list the same number of agents");
    if (!(s.prob >= 0.0) || !std::isfinite(s.prob))
      throw Error(ErrorCode::ProbabilitiesDoNotSumToOne, "state probability out of [0,1]");
    prob_sum += s.prob;
    for (double v : s.values) {
      if (!std::isfinite(v)) throw Error(ErrorCode::NegativeValue, "values must be finite");
      if (v < 0.0) throw Error(ErrorCode::NegativeValue, "values must be nonnegative");
    }
  }
  if (std::fabs(prob_sum - 1.0) > kProbabilityTol)
    throw Error(ErrorCode::ProbabilitiesDoNotSumToOne, "state probabilities must sum to 1");

  const auto means = agent_means(p);
  for (int i = 0; i < n; ++i) {
    if (!(means[static_cast<size_t>(i)] > 0.0))
      throw Error(ErrorCode::ZeroExpectedValue,
                  "agent " + std::to_string(i) + " has zero expected value");
  }
  return p;
}

std::vector<double> agent_means(const DiscreteProblem& p) {
  const int n = p.agents();
  std::vector<double> means(static_cast<size_t>(n), 0.0);
  for (const auto& s : p.states)
    for (int i = 0; i < n; ++i) means[static_cast<size_t>(i)] += s.prob * s.values[static_cast<size_t>(i)];
  return means;
}

DiscreteProblem normalize_problem(const DiscreteProblem& p) {
  validate_problem(p);
  const auto means = agent_means(p);
  DiscreteProblem q = p;
  for (auto& s : q.states)
    for (size_t i = 0; i < s.values.size(); ++i) s.values[i] /= means[i];
  return q;
}

OrderStats order_stats(const ValueProfile& x) {
  require_profile(x);
  const int n = x.size();

  OrderStats os;
  os.perm.resize(static_cast<size_t>(n));
  std::iota(os.perm.begin(), os.perm.end(), 0);
  std::stable_sort(os.perm.begin(), os.perm.end(),
                   [&x](int a, int b) { return x[a] < x[b]; });

  os.sorted.reserve(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) os.sorted.push_back(x[os.perm[static_cast<size_t>(r)]]);

  for (int r = 0; r < n; ++r) {
    const double v = os.sorted[static_cast<size_t>(r)];
    if (os.levels.empty() || v != os.levels.back()) {
      os.levels.push_back(v);
      os.level_sets.emplace_back();
    }
    os.level_sets.back().push_back(os.perm[static_cast<size_t>(r)]);
  }
  os.top_set = os.level_sets.back();
  return os;
}

}  // namespace fairdiv
