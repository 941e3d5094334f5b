#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "fairdiv/rules.hpp"

namespace fairdiv {

enum class RatioMethod { ClosedForm, Search, LP, MonteCarlo };

const char* ratio_method_name(RatioMethod m);

/// A worst-case efficiency figure with its provenance. Search values are
/// lower-bound certificates for a supremum; when the analysis only gives a
/// bracket, `bounds` carries (lower, upper).
struct RatioReport {
  double value = 1.0;
  RatioMethod method = RatioMethod::ClosedForm;
  std::optional<ValueProfile> witness_profile;
  std::optional<DiscreteProblem> witness_problem;
  std::optional<std::pair<double, double>> bounds;
};

/// Multi-start maximization of the worst-case ratio
///   good: max_i x_i / sum_i phi_i(x) x_i,   bad: sum_i phi_i(x) x_i / min_i x_i
/// over the simplex (scale invariance of the rules justifies the restriction).
/// Starts are seeded random profiles plus structured patterns including the
/// known witness shapes; each start is refined by coordinate-wise scans with
/// golden-section polishing. Deterministic for fixed (seed, restarts) no
/// matter how many threads run, and monotone in `restarts`.
RatioReport cr_search(const RuleId& rule, int n, ObjectKind kind, int restarts = 1000,
                      std::uint64_t seed = 1);

/// n / (2 sqrt((n-1+theta) theta) + 1 - 2 theta); decreasing in theta.
double cr_closed_form_top_heavy(int n, Theta theta);

/// (sqrt(n)+1)/2 for a good, n for a bad.
double cr_closed_form_proportional(int n, ObjectKind kind);

/// (n/4 + 1/2 + 1/(4n), n/4 + 5/4): bracket for the bottom-heavy rule's ratio.
std::pair<double, double> cr_bounds_bottom_heavy(int n);

/// Best worst-case ratio over all fair prior-dependent rules. Exact for a bad;
/// for a good only a bracket is known and `value` is set to its upper end.
RatioReport inf_pof(int n, ObjectKind kind);

/// m equiprobable states; m single-minded agents worth m in their own state,
/// n-m indifferent agents worth 1 everywhere. Already normalized.
DiscreteProblem hard_instance_good(int n, int m);

/// Two equally probable states (4/(n+1), 2, ..., 2) and (2(n-1)/(n+1), 0, ..., 0).
DiscreteProblem hard_instance_bad(int n);

/// Uniform mixture of all coordinate permutations of x / mean(x): a symmetric
/// normalized problem whose optimal fair value reaches the utilitarian level.
DiscreteProblem symmetric_problem(const ValueProfile& x, ObjectKind kind);

}  // namespace fairdiv
