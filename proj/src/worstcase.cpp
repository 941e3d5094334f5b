#include "fairdiv/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fairdiv/rng.hpp"

namespace fairdiv {

const char* ratio_method_name(RatioMethod m) {
  switch (m) {
    case RatioMethod::ClosedForm: return "closed-form";
    case RatioMethod::Search: return "search";
    case RatioMethod::LP: return "lp";
    case RatioMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

namespace {

constexpr double kGolden = 0.6180339887498949;

struct Objective {
  const RuleId& rule;
  ObjectKind kind;
  int n;

  double operator()(const std::vector<double>& x, RuleWorkspace& ws) const {
    double extreme = x[0];
    for (double v : x)
      extreme = (kind == ObjectKind::Good) ? std::max(extreme, v) : std::min(extreme, v);
    const double welfare = realized_welfare(rule, x, kind, ws);
    if (kind == ObjectKind::Good) {
      if (!(welfare > 0.0)) return -1.0;
      return extreme / welfare;
    }
    if (!(extreme > 0.0)) return -1.0;
    return welfare / extreme;
  }
};

// Coordinate refinement: scan each coordinate on a linear grid, polish the
// best cell with golden section, and sweep until the gain fades.
double refine(const Objective& f, std::vector<double>& x, double lo, double hi,
              RuleWorkspace& ws) {
  constexpr int kScan = 33;
  double best = f(x, ws);
  for (int sweep = 0; sweep < 60; ++sweep) {
    const double before = best;
    for (size_t i = 0; i < x.size(); ++i) {
      const double keep = x[i];
      double cand = keep;
      double cand_val = f(x, ws);
      const double step = (hi - lo) / (kScan - 1);
      for (int k = 0; k < kScan; ++k) {
        x[i] = lo + step * k;
        const double v = f(x, ws);
        if (v > cand_val) {
          cand_val = v;
          cand = x[i];
        }
      }
      // golden section inside the bracketing cell
      double a = std::max(lo, cand - step);
      double b = std::min(hi, cand + step);
      double u = a + (1.0 - kGolden) * (b - a);
      double v = a + kGolden * (b - a);
      x[i] = u;
      double fu = f(x, ws);
      x[i] = v;
      double fv = f(x, ws);
      for (int it = 0; it < 80; ++it) {
        if (fu > fv) {
          b = v;
          v = u;
          fv = fu;
          u = a + (1.0 - kGolden) * (b - a);
          x[i] = u;
          fu = f(x, ws);
        } else {
          a = u;
          u = v;
          fu = fv;
          v = a + kGolden * (b - a);
          x[i] = v;
          fv = f(x, ws);
        }
        if (b - a < 1e-13 * std::max(1.0, std::fabs(b))) break;
      }
      if (fu > cand_val) {
        cand_val = fu;
        cand = u;
      }
      if (fv > cand_val) {
        cand_val = fv;
        cand = v;
      }
      if (cand_val > best) {
        best = cand_val;
        x[i] = cand;
      } else {
        x[i] = keep;
      }
    }
    if (best - before <= 1e-10 * std::max(1.0, std::fabs(best))) break;
  }
  return best;
}

std::vector<std::vector<double>> structured_starts(const RuleId& rule, int n, ObjectKind kind,
                                                   double lo) {
  std::vector<std::vector<double>> starts;

  // e^M / |M| patterns for every nonempty M (capped for large n)
  if (n <= 12) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<double> x(static_cast<size_t>(n), lo);
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) x[static_cast<size_t>(i)] = 1.0;
      starts.push_back(std::move(x));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      std::vector<double> x(static_cast<size_t>(n), lo);
      x[static_cast<size_t>(i)] = 1.0;
      starts.push_back(std::move(x));
    }
    starts.emplace_back(static_cast<size_t>(n), 1.0);
  }

  // (y, ..., y, 1) witness patterns over a grid of ratios, plus the ratios the
  // closed forms single out
  std::vector<double> ratios{1.05, 1.1, 1.2, 1.3, 1.4, 1.5, 1.75, 2.0, 2.5, 3.0};
  if (rule.kind == RuleKind::TopHeavy)
    ratios.push_back(std::sqrt((n - 1 + rule.theta) / rule.theta));
  if (rule.kind == RuleKind::Proportional && kind == ObjectKind::Good)
    ratios.push_back(std::sqrt(static_cast<double>(n)) + 1.0);  // 1/c with c = 1/(sqrt(n)+1)
  for (double r : ratios) {
    std::vector<double> x(static_cast<size_t>(n), std::max(1.0 / r, lo));
    x.back() = 1.0;
    starts.push_back(std::move(x));
    // mirrored pattern: one low coordinate, the rest high
    std::vector<double> y(static_cast<size_t>(n), 1.0);
    y.front() = std::max(1.0 / r, lo);
    starts.push_back(std::move(y));
  }
  return starts;
}

}  // namespace

RatioReport cr_search(const RuleId& rule, int n, ObjectKind kind, int restarts,
                      std::uint64_t seed) {
  if (!rule_compatible(rule, kind))
    throw Error(ErrorCode::RuleKindMismatch,
                rule_name(rule) + " is not defined for a " + kind_name(kind));
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");

  const double lo = kind == ObjectKind::Bad ? 1e-9 : 0.0;
  const Objective f{rule, kind, n};

  std::vector<std::vector<double>> starts = structured_starts(rule, n, kind, lo);
  const long long structured = static_cast<long long>(starts.size());
  const long long total = structured + restarts;
  starts.resize(static_cast<size_t>(total));

  std::vector<double> values(static_cast<size_t>(total),
                             -std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> argmax(static_cast<size_t>(total));

#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < total; ++k) {
    RuleWorkspace ws;
    std::vector<double> x;
    if (k < structured) {
      x = starts[static_cast<size_t>(k)];
    } else {
      CounterRng rng(seed, static_cast<std::uint64_t>(k - structured));
      x.resize(static_cast<size_t>(n));
      for (double& v : x) v = std::max(rng.next_double(), lo);
    }
    values[static_cast<size_t>(k)] = refine(f, x, lo, 1.0, ws);
    argmax[static_cast<size_t>(k)] = std::move(x);
  }

  long long best = 0;
  for (long long k = 1; k < total; ++k)
    if (values[static_cast<size_t>(k)] > values[static_cast<size_t>(best)]) best = k;

  RatioReport report;
  report.value = values[static_cast<size_t>(best)];
  report.method = RatioMethod::Search;
  std::vector<double> w = argmax[static_cast<size_t>(best)];
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  if (s > 0.0)
    for (double& v : w) v /= s;
  report.witness_profile = ValueProfile{w};
  return report;
}

double cr_closed_form_top_heavy(int n, Theta theta) {
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");
  const double th = theta.value;
  return n / (2.0 * std::sqrt((n - 1 + th) * th) + 1.0 - 2.0 * th);
}

double cr_closed_form_proportional(int n, ObjectKind kind) {
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");
  if (kind == ObjectKind::Good) return (std::sqrt(static_cast<double>(n)) + 1.0) / 2.0;
  return static_cast<double>(n);
}

std::pair<double, double> cr_bounds_bottom_heavy(int n) {
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");
  const double nn = n;
  return {nn / 4.0 + 0.5 + 1.0 / (4.0 * nn), nn / 4.0 + 1.25};
}

RatioReport inf_pof(int n, ObjectKind kind) {
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");
  RatioReport r;
  r.method = RatioMethod::ClosedForm;
  const double nn = n;
  if (kind == ObjectKind::Bad) {
    r.value = nn / 4.0 + 0.5 + 1.0 / (4.0 * nn);
    r.witness_problem = hard_instance_bad(n);
    return r;
  }
  const double root = 2.0 * std::sqrt(nn);
  r.bounds = std::make_pair(nn / (root - 0.5), nn / (root - 1.0));
  r.value = r.bounds->second;
  int m = static_cast<int>(std::lround(std::sqrt(nn)));
  m = std::clamp(m, 1, n - 1);
  r.witness_problem = hard_instance_good(n, m);
  return r;
}

DiscreteProblem hard_instance_good(int n, int m) {
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");
  if (m < 1 || m > n - 1)
    throw Error(ErrorCode::InvalidM, "m must lie in [1, n-1]");
  DiscreteProblem p;
  p.kind = ObjectKind::Good;
  for (int s = 0; s < m; ++s) {
    DiscreteState st;
    st.prob = 1.0 / m;
    st.values.assign(static_cast<size_t>(n), 1.0);
    for (int i = 0; i < m; ++i) st.values[static_cast<size_t>(i)] = (i == s) ? static_cast<double>(m) : 0.0;
    p.states.push_back(std::move(st));
  }
  validate_problem(p);
  return p;
}

DiscreteProblem hard_instance_bad(int n) {
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");
  DiscreteProblem p;
  p.kind = ObjectKind::Bad;
  DiscreteState a, b;
  a.prob = 0.5;
  b.prob = 0.5;
  a.values.assign(static_cast<size_t>(n), 2.0);
  a.values[0] = 4.0 / (n + 1);
  b.values.assign(static_cast<size_t>(n), 0.0);
  b.values[0] = 2.0 * (n - 1) / (n + 1);
  p.states = {std::move(a), std::move(b)};
  validate_problem(p);
  return p;
}

DiscreteProblem symmetric_problem(const ValueProfile& x, ObjectKind kind) {
  require_profile(x);
  const int n = x.size();
  const double mean = stable_sum(x.values) / n;
  if (!(mean > 0.0)) throw Error(ErrorCode::ZeroExpectedValue, "profile must have positive mean");

  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  DiscreteProblem p;
  p.kind = kind;
  std::vector<std::vector<double>> rows;
  do {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = x[idx[static_cast<size_t>(i)]] / mean;
    rows.push_back(std::move(v));
  } while (std::next_permutation(idx.begin(), idx.end()));
  for (auto& row : rows) p.states.push_back(DiscreteState{1.0 / static_cast<double>(rows.size()), std::move(row)});
  validate_problem(p);
  return p;
}

}  // namespace fairdiv
