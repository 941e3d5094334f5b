#include "fairdiv/rules.hpp"

#include <algorithm>
#include <cmath>

namespace fairdiv {

namespace {

Allocation uniform_allocation(int n) {
  return Allocation{std::vector<double>(static_cast<size_t>(n), 1.0 / n)};
}

// Clamp rounding dust and, when the total has drifted off 1, push the residual
// onto the designated slack set (the agents whose share is defined as "the
// rest"). Shares given by a closed-form bound are left untouched.
void finalize_allocation(Allocation& a, const std::vector<int>& slack_set) {
  for (double& s : a.shares)
    if (s < 0.0 && s > -1e-12) s = 0.0;
  const double sum = stable_sum(a.shares);
  if (std::fabs(sum - 1.0) > 1e-13 && !slack_set.empty()) {
    const double fix = (1.0 - sum) / static_cast<double>(slack_set.size());
    for (int i : slack_set) a.shares[static_cast<size_t>(i)] += fix;
    for (double& s : a.shares)
      if (s < 0.0 && s > -1e-12) s = 0.0;
  }
}

double ascending_sum(const std::vector<double>& sorted) {
  double s = 0.0;
  for (double v : sorted) s += v;
  return s;
}

}  // namespace

RuleId RuleId::bh_theta(double t) {
  if (!(t >= 0.0) || t > 1.0) throw Error(ErrorCode::InvalidTheta, "theta must be in [0,1]");
  return {RuleKind::BottomHeavyTheta, t};
}

std::string rule_name(const RuleId& rule) {
  switch (rule.kind) {
    case RuleKind::EqualSplit: return "equal-split";
    case RuleKind::Utilitarian: return "utilitarian";
    case RuleKind::Proportional: return "proportional";
    case RuleKind::TopHeavy: return "top-heavy";
    case RuleKind::BottomHeavy: return "bottom-heavy";
    case RuleKind::BottomHeavyTheta: return "bottom-heavy-theta";
  }
  return "unknown";
}

bool rule_compatible(const RuleId& rule, ObjectKind kind) {
  switch (rule.kind) {
    case RuleKind::TopHeavy: return kind == ObjectKind::Good;
    case RuleKind::BottomHeavy:
    case RuleKind::BottomHeavyTheta: return kind == ObjectKind::Bad;
    default: return true;
  }
}

Allocation equal_split(const ValueProfile& x) {
  require_profile(x);
  return uniform_allocation(x.size());
}

Allocation utilitarian(const ValueProfile& x, ObjectKind kind) {
  require_profile(x);
  const int n = x.size();
  double best = x[0];
  for (int i = 1; i < n; ++i)
    best = (kind == ObjectKind::Good) ? std::max(best, x[i]) : std::min(best, x[i]);
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (x[i] == best) ++count;
  Allocation a{std::vector<double>(static_cast<size_t>(n), 0.0)};
  for (int i = 0; i < n; ++i)
    if (x[i] == best) a.shares[static_cast<size_t>(i)] = 1.0 / count;
  return a;
}

Allocation proportional(const ValueProfile& x, ObjectKind kind) {
  require_profile(x);
  const int n = x.size();
  Allocation a{std::vector<double>(static_cast<size_t>(n), 0.0)};

  if (kind == ObjectKind::Good) {
    const double total = stable_sum(x.values);
    if (total == 0.0) return uniform_allocation(n);
    for (int i = 0; i < n; ++i) a.shares[static_cast<size_t>(i)] = x[i] / total;
    return a;
  }

  int zeros = 0;
  for (int i = 0; i < n; ++i)
    if (x[i] == 0.0) ++zeros;
  if (zeros > 0) {
    for (int i = 0; i < n; ++i)
      if (x[i] == 0.0) a.shares[static_cast<size_t>(i)] = 1.0 / zeros;
    return a;
  }
  std::vector<double> inv(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i)] = 1.0 / x[i];
  const double inv_total = stable_sum(inv);
  for (int i = 0; i < n; ++i) a.shares[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)] / inv_total;
  return a;
}

Allocation top_heavy(const ValueProfile& x, Theta theta) {
  require_profile(x);
  const int n = x.size();
  if (all_equal(x.values)) return uniform_allocation(n);

  const OrderStats os = order_stats(x);
  const double total = ascending_sum(os.sorted);
  const double mean = total / n;
  const int top_count = static_cast<int>(os.top_set.size());

  Allocation a{std::vector<double>(static_cast<size_t>(n), 0.0)};
  double non_top_sum = 0.0;
  for (int r = 0; r < n - top_count; ++r) {
    const double xi = os.sorted[static_cast<size_t>(r)];
    // 1/0 = +inf convention: a zero value forces the floor to 0.
    const double floor =
        xi > 0.0 ? std::max(1.0 / n + theta.value / (n - 1) * (1.0 - mean / xi), 0.0) : 0.0;
    a.shares[static_cast<size_t>(os.perm[static_cast<size_t>(r)])] = floor;
    non_top_sum += floor;
  }
  const double rem = std::max(1.0 - non_top_sum, 0.0);
  for (int i : os.top_set) a.shares[static_cast<size_t>(i)] = rem / top_count;
  finalize_allocation(a, os.top_set);
  return a;
}

namespace {

// Shared prefix construction for the bottom-heavy family. `cap(v)` is the
// per-agent ceiling at level value v; caps are accepted level by level while
// their running total stays within 1, then the next level splits the rest.
Allocation bottom_heavy_common(const ValueProfile& x, double (*cap)(double v, double mean, int n, double theta),
                               double theta) {
  const int n = x.size();
  const OrderStats os = order_stats(x);
  Allocation a{std::vector<double>(static_cast<size_t>(n), 0.0)};

  if (os.sorted.front() == 0.0) {
    // 1/0 = +inf: no nonempty prefix is feasible, so the zero-value agents
    // (the first level) split the whole object.
    const auto& zeros = os.level_sets.front();
    for (int i : zeros) a.shares[static_cast<size_t>(i)] = 1.0 / static_cast<double>(zeros.size());
    return a;
  }

  const double total = ascending_sum(os.sorted);
  const double mean = total / n;

  size_t accepted_levels = 0;
  double cap_sum = 0.0;
  for (size_t l = 0; l < os.levels.size(); ++l) {
    const double c = cap(os.levels[l], mean, n, theta);
    const double level_total = c * static_cast<double>(os.level_sets[l].size());
    if (cap_sum + level_total <= 1.0) {
      cap_sum += level_total;
      accepted_levels = l + 1;
    } else {
      break;
    }
  }

  double assigned = 0.0;
  for (size_t l = 0; l < accepted_levels; ++l) {
    const double c = cap(os.levels[l], mean, n, theta);
    for (int i : os.level_sets[l]) {
      a.shares[static_cast<size_t>(i)] = c;
      assigned += c;
    }
  }

  if (accepted_levels < os.levels.size()) {
    const auto& next = os.level_sets[accepted_levels];
    const double rem = std::max(1.0 - assigned, 0.0);
    for (int i : next) a.shares[static_cast<size_t>(i)] = rem / static_cast<double>(next.size());
    finalize_allocation(a, next);
  } else {
    finalize_allocation(a, os.top_set);
  }
  return a;
}

double bh_cap(double v, double mean, int n, double /*theta*/) {
  // (total - v) / (n (n-1) v), written through the mean to share code paths
  return (static_cast<double>(n) * mean - v) / (static_cast<double>(n) * (n - 1) * v);
}

double bh_theta_cap(double v, double mean, int n, double theta) {
  return 1.0 / n + theta / (n - 1) * (mean / v - 1.0);
}

}  // namespace

Allocation bottom_heavy(const ValueProfile& x) {
  require_profile(x);
  if (all_equal(x.values)) return uniform_allocation(x.size());
  return bottom_heavy_common(x, bh_cap, 1.0);
}

Allocation bottom_heavy_theta(const ValueProfile& x, double theta) {
  if (!(theta >= 0.0) || theta > 1.0) throw Error(ErrorCode::InvalidTheta, "theta must be in [0,1]");
  require_profile(x);
  if (theta == 0.0) return equal_split(x);
  if (all_equal(x.values)) return uniform_allocation(x.size());
  return bottom_heavy_common(x, bh_theta_cap, theta);
}

Allocation allocate(const RuleId& rule, const ValueProfile& x, ObjectKind kind) {
  if (!rule_compatible(rule, kind))
    throw Error(ErrorCode::RuleKindMismatch,
                rule_name(rule) + " is not defined for a " + kind_name(kind));
  switch (rule.kind) {
    case RuleKind::EqualSplit: return equal_split(x);
    case RuleKind::Utilitarian: return utilitarian(x, kind);
    case RuleKind::Proportional: return proportional(x, kind);
    case RuleKind::TopHeavy: return top_heavy(x, Theta(rule.theta));
    case RuleKind::BottomHeavy: return bottom_heavy(x);
    case RuleKind::BottomHeavyTheta: return bottom_heavy_theta(x, rule.theta);
  }
  throw Error(ErrorCode::RuleKindMismatch, "unknown rule");
}

double realized_welfare(const RuleId& rule, std::span<const double> x, ObjectKind kind,
                        RuleWorkspace& ws) {
  const int n = static_cast<int>(x.size());
  switch (rule.kind) {
    case RuleKind::EqualSplit: {
      double s = 0.0;
      for (double v : x) s += v;
      return s / n;
    }
    case RuleKind::Utilitarian: {
      double best = x[0];
      for (int i = 1; i < n; ++i)
        best = (kind == ObjectKind::Good) ? std::max(best, x[i]) : std::min(best, x[i]);
      return best;
    }
    case RuleKind::Proportional: {
      if (kind == ObjectKind::Good) {
        double s = 0.0, sq = 0.0;
        for (double v : x) {
          s += v;
          sq += v * v;
        }
        return s == 0.0 ? 0.0 : sq / s;
      }
      double inv = 0.0;
      for (double v : x) {
        if (v == 0.0) return 0.0;
        inv += 1.0 / v;
      }
      return n / inv;
    }
    case RuleKind::TopHeavy: {
      double total = 0.0, top = x[0];
      for (double v : x) {
        total += v;
        top = std::max(top, v);
      }
      const double mean = total / n;
      if (top == 0.0) return 0.0;
      double floor_sum = 0.0, floor_weighted = 0.0;
      bool any_below = false;
      for (double v : x) {
        if (v == top) continue;
        any_below = true;
        const double f =
            v > 0.0 ? std::max(1.0 / n + rule.theta / (n - 1) * (1.0 - mean / v), 0.0) : 0.0;
        floor_sum += f;
        floor_weighted += f * v;
      }
      if (!any_below) return mean;
      return floor_weighted + top * std::max(1.0 - floor_sum, 0.0);
    }
    case RuleKind::BottomHeavy:
    case RuleKind::BottomHeavyTheta: {
      const double theta = rule.kind == RuleKind::BottomHeavy ? 1.0 : rule.theta;
      if (theta == 0.0) {
        double s = 0.0;
        for (double v : x) s += v;
        return s / n;
      }
      ws.sorted.assign(x.begin(), x.end());
      std::sort(ws.sorted.begin(), ws.sorted.end());
      if (ws.sorted.front() == ws.sorted.back()) return ws.sorted.front();
      if (ws.sorted.front() == 0.0) return 0.0;  // zero-value agents absorb the bad

      double total = 0.0;
      for (double v : ws.sorted) total += v;
      const double mean = total / n;

      double cap_sum = 0.0, welfare = 0.0;
      int r = 0;
      while (r < n) {
        // whole tie level at a time
        int r_end = r;
        while (r_end < n && ws.sorted[static_cast<size_t>(r_end)] == ws.sorted[static_cast<size_t>(r)]) ++r_end;
        const double v = ws.sorted[static_cast<size_t>(r)];
        const double c = rule.kind == RuleKind::BottomHeavy ? bh_cap(v, mean, n, theta)
                                                            : bh_theta_cap(v, mean, n, theta);
        const double level_total = c * (r_end - r);
        if (cap_sum + level_total <= 1.0) {
          cap_sum += level_total;
          welfare += level_total * v;
          r = r_end;
        } else {
          welfare += std::max(1.0 - cap_sum, 0.0) * v;
          return welfare;
        }
      }
      return welfare + std::max(1.0 - cap_sum, 0.0) * ws.sorted.back();
    }
  }
  return 0.0;
}

}  // namespace fairdiv
