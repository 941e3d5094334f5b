#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fairdiv/quadrature.hpp"
#include "fairdiv/rng.hpp"

namespace fairdiv {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// A unit-mean distribution on [0, inf): continuous density plus optional
/// atoms. All builtins are rescaled at construction so the mean is exactly 1
/// in closed form; the invariants are re-checked by quadrature in the tests.
class Distribution1D {
 public:
  using Density = std::function<double(double)>;
  using Cdf = std::function<double(double)>;
  using Sampler = std::function<double(CounterRng&)>;

  /// uniform[a, b] rescaled to mean 1 (so uniform(0, 1) lives on [0, 2]).
  static Distribution1D uniform(double a, double b);
  static Distribution1D exponential();
  /// density 3/4 x (2 - x) on [0, 2].
  static Distribution1D poly32();
  /// density proportional to x^(-alpha) near 0, alpha in (0,1); support
  /// (0, (2-alpha)/(1-alpha)] after mean normalization.
  static Distribution1D power_law(double alpha);
  /// purely atomic, rescaled to mean 1.
  static Distribution1D atom_mixture(std::vector<Atom> atoms);
  static Distribution1D point_mass();

  const std::string& name() const { return name_; }
  bool has_density() const { return static_cast<bool>(pdf_); }
  double pdf(double x) const { return pdf_ ? pdf_(x) : 0.0; }
  double cdf(double x) const { return cdf_(x); }
  double sample(CounterRng& rng) const { return sampler_(rng); }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }  // +inf for unbounded support
  const std::vector<Atom>& atoms() const { return atoms_; }
  double continuous_mass() const { return continuous_mass_; }

  /// E[g(X)] by quadrature over the continuous part (split at the given kinks
  /// and at atoms) plus the atom sum.
  double expect(const std::function<double(double)>& g, std::vector<double> kinks = {},
                QuadratureOptions opts = {}) const;

  double mean() const;
  double second_moment() const;
  /// E|X - 1|.
  double abs_deviation() const;
  /// E[1/X]; throws HarmonicMomentInfinite when the integral diverges at 0.
  double harmonic_moment() const;
  /// E[1_{X < t} / X] (the atom at t itself excluded); same divergence rule.
  double harmonic_moment_below(double t) const;

 private:
  std::string name_;
  Density pdf_;
  Cdf cdf_;
  Cdf quantile_;  // inverse cdf of the continuous part; set when the density
                  // is singular so expectations integrate in probability space
  Sampler sampler_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<Atom> atoms_;
  double continuous_mass_ = 1.0;
};

}  // namespace fairdiv
