#pragma once

#include <span>
#include <string>

#include "fairdiv/core.hpp"

namespace fairdiv {

/// Top-heavy weight parameter, restricted to (0, 1].
struct Theta {
  double value;
  explicit Theta(double v) : value(v) {
    if (!(v > 0.0) || v > 1.0) throw Error(ErrorCode::InvalidTheta, "theta must be in (0,1]");
  }
};

enum class RuleKind { EqualSplit, Utilitarian, Proportional, TopHeavy, BottomHeavy, BottomHeavyTheta };

/// A rule together with its parameter, as selected on the command line.
struct RuleId {
  RuleKind kind = RuleKind::EqualSplit;
  double theta = 1.0;

  static RuleId es() { return {RuleKind::EqualSplit, 1.0}; }
  static RuleId ut() { return {RuleKind::Utilitarian, 1.0}; }
  static RuleId pro() { return {RuleKind::Proportional, 1.0}; }
  static RuleId th(double t) { return {RuleKind::TopHeavy, Theta(t).value}; }
  static RuleId bh() { return {RuleKind::BottomHeavy, 1.0}; }
  static RuleId bh_theta(double t);
};

std::string rule_name(const RuleId& rule);

/// Whether the rule is defined for the given object kind (top-heavy rules
/// divide goods, bottom-heavy rules divide bads; the benchmarks do both).
bool rule_compatible(const RuleId& rule, ObjectKind kind);

Allocation equal_split(const ValueProfile& x);

/// Equal split of the whole object over the argmax (good) or argmin (bad) set.
Allocation utilitarian(const ValueProfile& x, ObjectKind kind);

/// Shares proportional to values (good) or to inverse values (bad). The zero
/// profile gets the equal split; for a bad, zero-value agents absorb the
/// object in equal shares.
Allocation proportional(const ValueProfile& x, ObjectKind kind);

/// Agents outside the top set receive exactly their fair-share floor
/// max{1/n + theta/(n-1) (1 - mean/x_i), 0}; the top set splits the rest
/// equally. Profiles with all coordinates equal get the equal split.
Allocation top_heavy(const ValueProfile& x, Theta theta);

/// The longest prefix of low-value agents whose fair-share caps
/// x_{N\i} / (n(n-1) x_i) fit into total probability 1 receives those caps;
/// the next level splits the remainder equally; everyone else gets 0.
Allocation bottom_heavy(const ValueProfile& x);

/// One-parameter family sweeping from equal split (theta = 0) to the
/// bottom-heavy rule (theta = 1); the prefix cap is 1/n + theta/(n-1)(mean/x_i - 1).
Allocation bottom_heavy_theta(const ValueProfile& x, double theta);

Allocation allocate(const RuleId& rule, const ValueProfile& x, ObjectKind kind);

/// Scratch buffers for the allocation-free welfare kernel.
struct RuleWorkspace {
  std::vector<double> sorted;
};

/// Realized social value sum_i phi_i(x) x_i without materializing the
/// allocation. Used by the Monte Carlo kernels; the public allocate() path is
/// the serial reference it is tested against.
double realized_welfare(const RuleId& rule, std::span<const double> x, ObjectKind kind,
                        RuleWorkspace& ws);

}  // namespace fairdiv
