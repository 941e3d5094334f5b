#pragma once

#include <cstdint>

#include "fairdiv/distribution.hpp"
#include "fairdiv/rules.hpp"

namespace fairdiv {

enum class Extreme { Max, Min };

/// Sentinel agent count for the n -> infinity limits.
inline constexpr int kLimit = -1;

/// E[max] = lo + int (1 - F^n), E[min] = lo + int (1-F)^n by adaptive
/// quadrature, with the tail cut where the integrand drops below 1e-13.
double expected_extreme(const Distribution1D& d, int n, Extreme which);

/// Exact two-agent expected social value E[phi_1(X) X_1 + phi_2(X) X_2] for
/// i.i.d. draws, by nested quadrature split along the rule's kink rays.
double two_agent_social_value(const Distribution1D& d, const RuleId& rule, ObjectKind kind);

/// Efficiency ratio of the top-heavy rule under an i.i.d. prior. n == 2 is
/// computed exactly by two-agent quadrature; larger n (or kLimit) uses the
/// large-n expression 1 / (1 - E(1+t-t/X)_+ + E(X(1+t)-t)_+ / E[max]), whose
/// E[max] term is the support supremum at kLimit (and drops out entirely for
/// unbounded support).
double pi_th_limit_good(const Distribution1D& d, Theta theta, int n);

/// Proportional-rule ratio for a good: exact at n == 2, E[max] / E[X^2]
/// leading order otherwise.
double pi_pro_limit_good(const Distribution1D& d, int n);

/// Threshold T and tie weight gamma solving E[1_{X<T}/X] + gamma P(X=T)/T = 1,
/// plus the resulting mass P(X<T) + gamma P(X=T).
struct BhLimitPieces {
  double threshold = 0.0;
  double gamma = 0.0;
  double mass = 0.0;
};
BhLimitPieces bh_limit_pieces(const Distribution1D& d);

/// Bottom-heavy ratio for a bad: exact at n == 2, otherwise
/// (P(X<T) + gamma P(X=T)) / E[min]. Throws NoFiniteT when E[1/X] diverges.
double pi_bh_limit_bad(const Distribution1D& d, int n);

/// Proportional ratio for a bad: exact at n == 2, otherwise
/// 1 / (E[min] E[1/X]). Throws HarmonicMomentInfinite when E[1/X] diverges.
double pi_pro_limit_bad(const Distribution1D& d, int n);

/// Mean-absolute-deviation sandwich for the top-heavy limit: (1/D, 2/D + 4/D^2)
/// with D = E|X-1|. The lower end only binds for unbounded support.
struct DeviationBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_applies = false;
};
DeviationBounds lemma2_bounds(const Distribution1D& d);

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the efficiency ratio pi = E[max]/E[welfare] (good)
/// or E[welfare]/E[min] (bad) over i.i.d. profiles of length n. Samples are
/// drawn in fixed-size chunks with per-chunk counter-derived streams and
/// reduced in chunk order, so the estimate is bit-identical for any worker
/// count. The standard error comes from the delta method on the correlated
/// ratio. When both realized totals vanish the rule met the optimum on every
/// draw and the ratio is reported as 1.
MCEstimate monte_carlo_pi(const Distribution1D& d, const RuleId& rule, ObjectKind kind, int n,
                          long long samples, std::uint64_t seed);

/// Serial reference for the kernel above: same chunked stream layout, but each
/// welfare is computed through the public allocate() path.
MCEstimate monte_carlo_pi_reference(const Distribution1D& d, const RuleId& rule, ObjectKind kind,
                                    int n, long long samples, std::uint64_t seed);

enum class GrowthModel { SqrtN, NOverLogN, Constant };

/// Least-squares fit of log pi(n) against the model predictor. `slope` is the
/// free-slope fit (1 means the law matches); `coefficient` is the multiplier
/// with the slope pinned to the model (geometric mean of pi/u). SqrtN and
/// NOverLogN are consistent at r2 >= 0.95; Constant when the drift against
/// log n stays within 0.05.
struct GrowthFit {
  GrowthModel model = GrowthModel::Constant;
  std::vector<int> ns;
  std::vector<double> pis;
  double slope = 0.0;
  double coefficient = 0.0;
  double r2 = 0.0;
  bool consistent = false;
};

GrowthFit growth_check(const Distribution1D& d, const RuleId& rule, ObjectKind kind,
                       const std::vector<int>& n_grid, GrowthModel model,
                       long long samples_per_n = 40000, std::uint64_t seed = 7);

}  // namespace fairdiv
