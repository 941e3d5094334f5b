#include "fairdiv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double atom_mass_at(const Distribution1D& d, double t) {
  for (const Atom& at : d.atoms())
    if (at.location == t) return at.mass;
  return 0.0;
}

double cdf_left(const Distribution1D& d, double t) { return d.cdf(t) - atom_mass_at(d, t); }

}  // namespace

double expected_extreme(const Distribution1D& d, int n, Extreme which) {
  if (n < 1) throw Error(ErrorCode::DomainError, "need n >= 1");
  const double lo = d.support_lo();
  auto integrand = [&d, n, which](double t) {
    const double F = d.cdf(t);
    return which == Extreme::Max ? 1.0 - std::pow(F, n) : std::pow(1.0 - F, n);
  };

  std::vector<double> splits;
  for (const Atom& at : d.atoms()) splits.push_back(at.location);

  double upper = d.support_hi();
  if (upper == kInf) {
    upper = std::max(lo + 1.0, 1.0);
    while (integrand(upper) > 1e-13 && upper < 1e9) upper *= 2.0;
  }
  return lo + integrate_split(integrand, lo, upper, splits);
}

double two_agent_social_value(const Distribution1D& d, const RuleId& rule, ObjectKind kind) {
  if (!rule_compatible(rule, kind))
    throw Error(ErrorCode::RuleKindMismatch,
                rule_name(rule) + " is not defined for a " + kind_name(kind));

  // ratios x1/x2 where the two-agent allocation has a kink
  std::vector<double> ratio_kinks{1.0};
  if (rule.kind == RuleKind::TopHeavy) {
    const double t = rule.theta;
    ratio_kinks.push_back(t / (1.0 + t));
    ratio_kinks.push_back((1.0 + t) / t);
  } else if (rule.kind == RuleKind::BottomHeavy || rule.kind == RuleKind::BottomHeavyTheta) {
    const double t = rule.kind == RuleKind::BottomHeavy ? 1.0 : rule.theta;
    if (t > 0.0) {
      // prefix cap saturation: 1/2 + t/ (x2/x1 ... ) kinks at these ratios
      ratio_kinks.push_back(t / (1.0 + t));
      ratio_kinks.push_back((1.0 + t) / t);
    }
  }

  auto outer = [&](double x2) {
    std::vector<double> kinks;
    for (double r : ratio_kinks) kinks.push_back(r * x2);
    auto inner = [&](double x1) {
      RuleWorkspace local;
      const double xs[2] = {x1, x2};
      return realized_welfare(rule, std::span<const double>(xs, 2), kind, local);
    };
    QuadratureOptions inner_opts;
    inner_opts.abs_tol = 1e-10;
    return d.expect(inner, kinks, inner_opts);
  };
  QuadratureOptions outer_opts;
  outer_opts.abs_tol = 1e-9;
  return d.expect(outer, {}, outer_opts);
}

double pi_th_limit_good(const Distribution1D& d, Theta theta, int n) {
  if (n != kLimit && n < 2) throw Error(ErrorCode::DomainError, "need n >= 2 or kLimit");
  const double t = theta.value;
  if (n == 2) {
    const double s2 = two_agent_social_value(d, RuleId::th(t), ObjectKind::Good);
    return expected_extreme(d, 2, Extreme::Max) / s2;
  }

  const double kink = t / (1.0 + t);
  const double a = d.expect([t](double x) { return std::max(1.0 + t - (x > 0.0 ? t / x : kInf), 0.0); },
                            {kink});
  const double b = d.expect([t](double x) { return std::max(x * (1.0 + t) - t, 0.0); }, {kink});

  double emax;
  if (n == kLimit)
    emax = d.support_hi();  // +inf for unbounded support: the term drops out
  else
    emax = expected_extreme(d, n, Extreme::Max);

  const double denom = 1.0 - a + (emax == kInf ? 0.0 : b / emax);
  if (!(denom > 0.0))
    throw Error(ErrorCode::DegenerateDenominator, "limit formula denominator is not positive");
  return 1.0 / denom;
}

double pi_pro_limit_good(const Distribution1D& d, int n) {
  if (n != kLimit && n < 2) throw Error(ErrorCode::DomainError, "need n >= 2 or kLimit");
  if (n == 2) {
    const double s2 = two_agent_social_value(d, RuleId::pro(), ObjectKind::Good);
    return expected_extreme(d, 2, Extreme::Max) / s2;
  }
  const double m2 = d.second_moment();
  const double emax = n == kLimit ? d.support_hi() : expected_extreme(d, n, Extreme::Max);
  return emax / m2;  // +inf for unbounded support at the limit
}

BhLimitPieces bh_limit_pieces(const Distribution1D& d) {
  double total;
  try {
    total = d.harmonic_moment();
  } catch (const Error& e) {
    throw Error(ErrorCode::NoFiniteT, std::string("no finite threshold: ") + e.what());
  }

  BhLimitPieces out;
  if (total <= 1.0 + 1e-12) {
    if (total < 1.0 - 1e-9)
      throw Error(ErrorCode::NoFiniteT, "E[1/X] below 1 even at the support end");
    // threshold sits just past the support: everything counts, no tie weight
    out.threshold = d.support_hi() == kInf ? kInf : d.support_hi() + 1.0;
    out.gamma = 0.0;
    out.mass = 1.0;
    return out;
  }

  // g(T) = E[1_{X<T}/X] is nondecreasing in T; find the smallest T where
  // g(T) + mass(T)/T reaches 1. Atoms are the only discontinuities.
  for (const Atom& at : d.atoms()) {
    const double below = d.harmonic_moment_below(at.location);
    if (below >= 1.0 - 1e-12) break;  // crossed inside an earlier continuous stretch
    if (below + at.mass / at.location >= 1.0 - 1e-12) {
      out.threshold = at.location;
      out.gamma = std::clamp((1.0 - below) * at.location / at.mass, 0.0, 1.0);
      out.mass = cdf_left(d, out.threshold) + out.gamma * at.mass;
      return out;
    }
  }

  // purely continuous crossing: bisect harmonic_moment_below(T) = 1
  double lo = d.support_lo();
  double hi = d.support_hi();
  if (hi == kInf) {
    hi = std::max(1.0, lo + 1.0);
    while (d.harmonic_moment_below(hi) < 1.0 && hi < 1e9) hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (d.harmonic_moment_below(mid) < 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-10 * std::max(1.0, hi)) break;
  }
  out.threshold = 0.5 * (lo + hi);
  out.gamma = 0.0;
  out.mass = cdf_left(d, out.threshold);
  return out;
}

double pi_bh_limit_bad(const Distribution1D& d, int n) {
  if (n != kLimit && n < 2) throw Error(ErrorCode::DomainError, "need n >= 2 or kLimit");
  if (n == 2) {
    const double s2 = two_agent_social_value(d, RuleId::bh(), ObjectKind::Bad);
    return s2 / expected_extreme(d, 2, Extreme::Min);
  }
  const BhLimitPieces pieces = bh_limit_pieces(d);
  const double emin = n == kLimit ? d.support_lo() : expected_extreme(d, n, Extreme::Min);
  if (!(emin > 0.0)) return kInf;
  return pieces.mass / emin;
}

double pi_pro_limit_bad(const Distribution1D& d, int n) {
  if (n != kLimit && n < 2) throw Error(ErrorCode::DomainError, "need n >= 2 or kLimit");
  if (n == 2) {
    const double s2 = two_agent_social_value(d, RuleId::pro(), ObjectKind::Bad);
    return s2 / expected_extreme(d, 2, Extreme::Min);
  }
  const double h = d.harmonic_moment();
  const double emin = n == kLimit ? d.support_lo() : expected_extreme(d, n, Extreme::Min);
  if (!(emin > 0.0)) return kInf;
  return 1.0 / (emin * h);
}

DeviationBounds lemma2_bounds(const Distribution1D& d) {
  const double dev = d.abs_deviation();
  if (dev < 1e-12)
    throw Error(ErrorCode::ZeroDeviation, "distribution has zero mean absolute deviation");
  DeviationBounds b;
  b.lower = 1.0 / dev;
  b.upper = 2.0 / dev + 4.0 / (dev * dev);
  b.lower_applies = d.support_hi() == kInf;
  return b;
}

namespace {

constexpr long long kChunkSamples = 8192;

struct ChunkSums {
  double welfare = 0.0, extreme = 0.0;
  double welfare_sq = 0.0, extreme_sq = 0.0, cross = 0.0;
};

template <typename WelfareFn>
MCEstimate run_monte_carlo(const Distribution1D& d, const RuleId& rule, ObjectKind kind, int n,
                           long long samples, std::uint64_t seed, WelfareFn&& welfare_of,
                           bool parallel) {
  if (!rule_compatible(rule, kind))
    throw Error(ErrorCode::RuleKindMismatch,
                rule_name(rule) + " is not defined for a " + kind_name(kind));
  if (samples < 1) throw Error(ErrorCode::DomainError, "need at least one sample");
  if (n < 2) throw Error(ErrorCode::TooFewAgents, "need at least 2 agents");

  const long long chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<ChunkSums> sums(static_cast<size_t>(chunks));

#pragma omp parallel for schedule(static) if (parallel)
  for (long long c = 0; c < chunks; ++c) {
    CounterRng rng(seed, static_cast<std::uint64_t>(c));
    std::vector<double> x(static_cast<size_t>(n));
    ChunkSums s;
    const long long begin = c * kChunkSamples;
    const long long end = std::min(begin + kChunkSamples, samples);
    for (long long k = begin; k < end; ++k) {
      for (double& v : x) v = d.sample(rng);
      double extreme = x[0];
      for (double v : x)
        extreme = (kind == ObjectKind::Good) ? std::max(extreme, v) : std::min(extreme, v);
      const double w = welfare_of(x);
      s.welfare += w;
      s.extreme += extreme;
      s.welfare_sq += w * w;
      s.extreme_sq += extreme * extreme;
      s.cross += w * extreme;
    }
    sums[static_cast<size_t>(c)] = s;
  }

  ChunkSums t;
  for (const ChunkSums& s : sums) {
    t.welfare += s.welfare;
    t.extreme += s.extreme;
    t.welfare_sq += s.welfare_sq;
    t.extreme_sq += s.extreme_sq;
    t.cross += s.cross;
  }

  const double m = static_cast<double>(samples);
  const double wbar = t.welfare / m;
  const double ebar = t.extreme / m;
  const double var_w = std::max(t.welfare_sq / m - wbar * wbar, 0.0);
  const double var_e = std::max(t.extreme_sq / m - ebar * ebar, 0.0);
  const double cov = t.cross / m - wbar * ebar;

  MCEstimate est;
  est.samples = samples;
  est.seed = seed;
  const double num = kind == ObjectKind::Good ? ebar : wbar;
  const double den = kind == ObjectKind::Good ? wbar : ebar;
  if (den == 0.0) {
    // the rule met the utilitarian optimum on every draw, or the ratio blew up
    est.mean = num == 0.0 ? 1.0 : kInf;
    est.std_error = 0.0;
    return est;
  }
  est.mean = num / den;
  const double var_num = kind == ObjectKind::Good ? var_e : var_w;
  const double var_den = kind == ObjectKind::Good ? var_w : var_e;
  const double rel_var =
      var_num / (num * num) + var_den / (den * den) - 2.0 * cov / (num * den);
  est.std_error = std::fabs(est.mean) * std::sqrt(std::max(rel_var, 0.0) / m);
  return est;
}

}  // namespace

MCEstimate monte_carlo_pi(const Distribution1D& d, const RuleId& rule, ObjectKind kind, int n,
                          long long samples, std::uint64_t seed) {
  return run_monte_carlo(
      d, rule, kind, n, samples, seed,
      [&rule, kind](const std::vector<double>& x) {
        thread_local RuleWorkspace tls_ws;
        return realized_welfare(rule, x, kind, tls_ws);
      },
      /*parallel=*/true);
}

MCEstimate monte_carlo_pi_reference(const Distribution1D& d, const RuleId& rule, ObjectKind kind,
                                    int n, long long samples, std::uint64_t seed) {
  return run_monte_carlo(
      d, rule, kind, n, samples, seed,
      [&rule, kind](const std::vector<double>& x) {
        const Allocation a = allocate(rule, ValueProfile{x}, kind);
        double w = 0.0;
        for (size_t i = 0; i < x.size(); ++i) w += a.shares[i] * x[i];
        return w;
      },
      /*parallel=*/false);
}

GrowthFit growth_check(const Distribution1D& d, const RuleId& rule, ObjectKind kind,
                       const std::vector<int>& n_grid, GrowthModel model,
                       long long samples_per_n, std::uint64_t seed) {
  if (n_grid.size() < 3) throw Error(ErrorCode::DomainError, "need at least 3 grid points");
  for (size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw Error(ErrorCode::DomainError, "grid must increase");

  GrowthFit fit;
  fit.model = model;
  fit.ns = n_grid;
  for (size_t i = 0; i < n_grid.size(); ++i) {
    const MCEstimate est = monte_carlo_pi(d, rule, kind, n_grid[i], samples_per_n,
                                          seed + 1000003ULL * static_cast<std::uint64_t>(i));
    fit.pis.push_back(est.mean);
  }

  auto predictor = [model](double n) {
    switch (model) {
      case GrowthModel::SqrtN: return 0.5 * std::log(n);
      case GrowthModel::NOverLogN: return std::log(n / std::log(n));
      case GrowthModel::Constant: return std::log(n);
    }
    return 0.0;
  };

  const size_t m = n_grid.size();
  double su = 0.0, sy = 0.0;
  std::vector<double> us(m), ys(m);
  for (size_t i = 0; i < m; ++i) {
    us[i] = predictor(static_cast<double>(n_grid[i]));
    ys[i] = std::log(fit.pis[i]);
    su += us[i];
    sy += ys[i];
  }
  const double ubar = su / m, ybar = sy / m;
  double suu = 0.0, suy = 0.0, syy = 0.0;
  for (size_t i = 0; i < m; ++i) {
    suu += (us[i] - ubar) * (us[i] - ubar);
    suy += (us[i] - ubar) * (ys[i] - ybar);
    syy += (ys[i] - ybar) * (ys[i] - ybar);
  }
  fit.slope = suu > 0.0 ? suy / suu : 0.0;
  fit.r2 = (suu > 0.0 && syy > 0.0) ? (suy * suy) / (suu * syy) : 1.0;

  if (model == GrowthModel::Constant) {
    fit.coefficient = std::exp(ybar);
    fit.consistent = std::fabs(fit.slope) <= 0.05;
  } else {
    double pinned = 0.0;
    for (size_t i = 0; i < m; ++i) pinned += ys[i] - us[i];
    fit.coefficient = std::exp(pinned / static_cast<double>(m));
    fit.consistent = fit.r2 >= 0.95;
  }
  return fit;
}

}  // namespace fairdiv
