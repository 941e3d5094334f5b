#include "fairdiv/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairdiv/core.hpp"

namespace fairdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }

}  // namespace

Distribution1D Distribution1D::uniform(double a, double b) {
  if (!(0.0 <= a) || !(a < b))
    throw Error(ErrorCode::DomainError, "uniform needs 0 <= a < b");
  const double m = 0.5 * (a + b);
  if (!(m > 0.0)) throw Error(ErrorCode::DomainError, "uniform needs a positive mean");
  const double lo = a / m, hi = b / m;
  const double density = 1.0 / (hi - lo);

  Distribution1D d;
  d.name_ = "uniform[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  d.lo_ = lo;
  d.hi_ = hi;
  d.pdf_ = [lo, hi, density](double x) { return (x >= lo && x <= hi) ? density : 0.0; };
  d.cdf_ = [lo, hi, density](double x) { return clamp01((x - lo) * density); };
  d.sampler_ = [lo, hi](CounterRng& rng) { return rng.uniform(lo, hi); };
  return d;
}

Distribution1D Distribution1D::exponential() {
  Distribution1D d;
  d.name_ = "exponential";
  d.lo_ = 0.0;
  d.hi_ = kInf;
  d.pdf_ = [](double x) { return x >= 0.0 ? std::exp(-x) : 0.0; };
  d.cdf_ = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
  d.sampler_ = [](CounterRng& rng) { return rng.exponential(); };
  return d;
}

Distribution1D Distribution1D::poly32() {
  Distribution1D d;
  d.name_ = "poly32";
  d.lo_ = 0.0;
  d.hi_ = 2.0;
  d.pdf_ = [](double x) { return (x >= 0.0 && x <= 2.0) ? 0.75 * x * (2.0 - x) : 0.0; };
  d.cdf_ = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.25 * x * x * (3.0 - x);
  };
  // x/2 is the median of three independent uniforms (a Beta(2,2) draw)
  d.sampler_ = [](CounterRng& rng) {
    double u = rng.next_double(), v = rng.next_double(), w = rng.next_double();
    const double m = std::max(std::min(u, v), std::min(std::max(u, v), w));
    return 2.0 * m;
  };
  return d;
}

Distribution1D Distribution1D::power_law(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw Error(ErrorCode::DomainError, "power law needs alpha in (0,1)");
  const double a = (2.0 - alpha) / (1.0 - alpha);  // support end giving mean 1
  const double lam = (1.0 - alpha) * std::pow(a, alpha - 1.0);
  const double inv_exp = 1.0 / (1.0 - alpha);

  Distribution1D d;
  d.name_ = "power-law(alpha=" + std::to_string(alpha) + ")";
  d.lo_ = 0.0;
  d.hi_ = a;
  d.pdf_ = [a, lam, alpha](double x) {
    return (x > 0.0 && x <= a) ? lam * std::pow(x, -alpha) : 0.0;
  };
  d.cdf_ = [a, alpha](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= a) return 1.0;
    return std::pow(x / a, 1.0 - alpha);
  };
  d.quantile_ = [a, inv_exp](double u) { return a * std::pow(u, inv_exp); };
  d.sampler_ = [a, inv_exp](CounterRng& rng) { return a * std::pow(rng.next_double(), inv_exp); };
  return d;
}

Distribution1D Distribution1D::atom_mixture(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorCode::DomainError, "need at least one atom");
  double mass = 0.0, mean = 0.0;
  for (const Atom& at : atoms) {
    if (!(at.mass > 0.0) || at.location < 0.0)
      throw Error(ErrorCode::DomainError, "atoms need positive mass and nonnegative location");
    mass += at.mass;
    mean += at.mass * at.location;
  }
  if (std::fabs(mass - 1.0) > 1e-12)
    throw Error(ErrorCode::DomainError, "atom masses must sum to 1");
  if (!(mean > 0.0)) throw Error(ErrorCode::ZeroExpectedValue, "atom mixture has zero mean");
  for (Atom& at : atoms) at.location /= mean;
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });

  Distribution1D d;
  d.name_ = "atoms";
  d.atoms_ = atoms;
  d.continuous_mass_ = 0.0;
  d.lo_ = atoms.front().location;
  d.hi_ = atoms.back().location;
  d.cdf_ = [atoms](double x) {
    double c = 0.0;
    for (const Atom& at : atoms)
      if (at.location <= x) c += at.mass;
    return clamp01(c);
  };
  d.sampler_ = [atoms](CounterRng& rng) {
    double u = rng.next_double();
    for (const Atom& at : atoms) {
      if (u < at.mass) return at.location;
      u -= at.mass;
    }
    return atoms.back().location;
  };
  return d;
}

Distribution1D Distribution1D::point_mass() { return atom_mixture({{1.0, 1.0}}); }

double Distribution1D::expect(const std::function<double(double)>& g, std::vector<double> kinks,
                              QuadratureOptions opts) const {
  double total = 0.0;
  for (const Atom& at : atoms_) total += at.mass * g(at.location);
  if (!pdf_) return total;

  if (quantile_) {
    // integrate in probability space: robust against singular densities
    std::vector<double> usplits;
    for (double k : kinks)
      if (k > lo_ && k < hi_) usplits.push_back(cdf_(k));
    auto integrand = [this, &g](double u) { return g(quantile_(u)); };
    total += continuous_mass_ * integrate_split(integrand, 0.0, 1.0, usplits, opts);
    return total;
  }

  auto integrand = [this, &g](double x) { return pdf_(x) * g(x); };
  for (const Atom& at : atoms_) kinks.push_back(at.location);

  if (hi_ == kInf) {
    double cut = lo_ + 5.0;
    for (double k : kinks) cut = std::max(cut, k + 1.0);
    total += integrate_split(integrand, lo_, cut, kinks, opts);
    total += integrate_to_infinity(integrand, cut, opts);
  } else {
    total += integrate_split(integrand, lo_, hi_, kinks, opts);
  }
  return total;
}

double Distribution1D::mean() const {
  return expect([](double x) { return x; });
}

double Distribution1D::second_moment() const {
  return expect([](double x) { return x * x; });
}

double Distribution1D::abs_deviation() const {
  return expect([](double x) { return std::fabs(x - 1.0); }, {1.0});
}

namespace {

// Integral of f(x)/x over (0, upper] with divergence detection: octave by
// octave toward zero, stopping once the pieces are negligible.
double harmonic_integral_to_zero(const Distribution1D& d, double upper) {
  double total = 0.0;
  double hi = upper;
  auto integrand = [&d](double x) { return d.pdf(x) / x; };
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  double prev_piece = kInf;
  for (int k = 0; k < 140; ++k) {
    const double lo = 0.5 * hi;
    const double piece = integrate(integrand, lo, hi, opts);
    total += piece;
    if (piece < 1e-13 * std::max(1.0, total)) return total;
    if (k > 70 && piece > 0.7 * prev_piece)
      throw Error(ErrorCode::HarmonicMomentInfinite, "E[1/X] diverges near zero");
    prev_piece = piece;
    hi = lo;
  }
  throw Error(ErrorCode::HarmonicMomentInfinite, "E[1/X] diverges near zero");
}

}  // namespace

double Distribution1D::harmonic_moment_below(double t) const {
  double total = 0.0;
  for (const Atom& at : atoms_) {
    if (at.location >= t) continue;
    if (at.location == 0.0)
      throw Error(ErrorCode::HarmonicMomentInfinite, "atom at zero makes E[1/X] infinite");
    total += at.mass / at.location;
  }
  if (!pdf_) return total;

  const double upper = std::min(t, hi_);
  if (upper <= lo_) return total;
  auto integrand = [this](double x) { return pdf_(x) / x; };
  QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  if (lo_ == 0.0) {
    total += harmonic_integral_to_zero(*this, std::min(upper, 1.0));
    if (upper > 1.0) {
      if (upper == kInf) {
        total += integrate(integrand, 1.0, 8.0, opts);
        total += integrate_to_infinity(integrand, 8.0, opts);
      } else {
        total += integrate(integrand, 1.0, upper, opts);
      }
    }
  } else {
    if (upper == kInf) {
      const double cut = lo_ + 8.0;
      total += integrate(integrand, lo_, cut, opts);
      total += integrate_to_infinity(integrand, cut, opts);
    } else {
      total += integrate(integrand, lo_, upper, opts);
    }
  }
  return total;
}

double Distribution1D::harmonic_moment() const { return harmonic_moment_below(kInf); }

}  // namespace fairdiv
