#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fairdiv/asymptotics.hpp"
#include "fairdiv/distribution.hpp"
#include "fairdiv/quadrature.hpp"
#include "fairdiv/rng.hpp"
#include "fairdiv/special.hpp"
#include "test_helpers.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

TEST_CASE("adaptive simpson basics") {
  CHECK(close(integrate([](double x) { return std::sin(x); }, 0.0, M_PI), 2.0, 1e-9));
  CHECK(close(integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-12));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);

  // kink handled by an explicit split
  const double v = integrate_split([](double x) { return std::fabs(x - 0.5); }, 0.0, 1.0, {0.5});
  CHECK(close(v, 0.25, 1e-10));

  CHECK(close(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0), 1.0, 1e-8));
  CHECK(close(integrate_to_infinity([](double x) { return x * std::exp(-x); }, 0.0), 1.0, 1e-8));
}

TEST_CASE("exponential integral") {
  // independent oracle: quadrature of the defining integral Ei(x) = -int_{-x}^inf e^-t/t dt
  auto oracle = [](double x) {
    return -integrate_to_infinity([](double t) { return std::exp(-t) / t; }, -x);
  };
  for (double x : {-0.1, -0.5, -1.0, -2.5, -7.0}) {
    CHECK(close(exp_integral_Ei(x), oracle(x), 1e-8));
  }
  // frozen reference points
  CHECK(close(exp_integral_Ei(-0.5), -0.5597735947761607, 1e-10));
  CHECK(close(exp_integral_Ei(-1.0), -0.21938393439552026, 1e-10));
  CHECK_THROWS_AS(exp_integral_Ei(1.0), Error);
  CHECK_THROWS_AS(exp_integral_Ei(0.0), Error);
}

TEST_CASE("counter rng determinism and stream separation") {
  CounterRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool same = true, cross1 = true, cross2 = true;
  double mean = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const std::uint64_t ua = a.next_u64();
    same &= (ua == b.next_u64());
    cross1 &= (ua == c.next_u64());
    cross2 &= (ua == d.next_u64());
    mean += static_cast<double>(ua >> 11) * 0x1.0p-53;
  }
  CHECK(same);
  CHECK_FALSE(cross1);
  CHECK_FALSE(cross2);
  CHECK(close(mean / 4096.0, 0.5, 0.02));
}

TEST_CASE("builtin distributions are normalized") {
  const std::vector<Distribution1D> dists = {
      Distribution1D::uniform(0.0, 1.0),
      Distribution1D::uniform(0.5, 1.5),
      Distribution1D::exponential(),
      Distribution1D::poly32(),
      Distribution1D::power_law(0.5),
      Distribution1D::atom_mixture({{0.0, 0.5}, {2.0, 0.5}}),
      Distribution1D::point_mass(),
  };
  for (const auto& d : dists) {
    CHECK(close(d.mean(), 1.0, 1e-9));
    const double pdf_mass = d.has_density()
                                ? d.expect([](double) { return 1.0; }) -
                                      [&d] {
                                        double m = 0.0;
                                        for (const Atom& at : d.atoms()) m += at.mass;
                                        return m;
                                      }()
                                : 0.0;
    CHECK(close(pdf_mass, d.continuous_mass(), 1e-8));
  }
}

TEST_CASE("distribution shapes") {
  const auto u = Distribution1D::uniform(0.0, 1.0);  // rescaled to [0,2]
  CHECK(u.support_lo() == 0.0);
  CHECK(u.support_hi() == 2.0);
  CHECK(close(u.cdf(1.0), 0.5, 1e-15));

  const auto p = Distribution1D::poly32();
  CHECK(close(p.cdf(2.0), 1.0, 1e-15));
  CHECK(close(p.cdf(1.0), 0.5, 1e-15));
  // cdf' = pdf at interior points
  for (double x : {0.3, 0.9, 1.7}) {
    const double h = 1e-6;
    CHECK(close((p.cdf(x + h) - p.cdf(x - h)) / (2 * h), p.pdf(x), 1e-5));
  }

  const auto pl = Distribution1D::power_law(0.5);
  CHECK(close(pl.support_hi(), 3.0, 1e-12));  // (2-a)/(1-a) = 3 at a = 1/2
  CHECK(close(pl.cdf(pl.support_hi()), 1.0, 1e-12));

  const auto atoms = Distribution1D::atom_mixture({{0.0, 0.5}, {2.0, 0.5}});
  CHECK(atoms.cdf(0.0) == 0.5);
  CHECK(atoms.cdf(1.999) == 0.5);
  CHECK(atoms.cdf(2.0) == 1.0);
}

TEST_CASE("samplers hit the right mean") {
  const std::vector<Distribution1D> dists = {
      Distribution1D::uniform(0.0, 1.0), Distribution1D::exponential(),
      Distribution1D::poly32(), Distribution1D::power_law(0.5),
      Distribution1D::atom_mixture({{0.5, 0.25}, {7.0 / 6.0, 0.75}})};
  for (const auto& d : dists) {
    CounterRng rng(1234, 7);
    double s = 0.0, sq = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) {
      const double x = d.sample(rng);
      s += x;
      sq += x * x;
    }
    const double mean = s / m;
    const double se = std::sqrt((sq / m - mean * mean) / m);
    CHECK(close(mean, 1.0, 5.0 * se + 1e-4));
  }
}

TEST_CASE("poly32 sampler matches its cdf") {
  const auto d = Distribution1D::poly32();
  CounterRng rng(5, 5);
  const int m = 200000;
  int below_half = 0, below_03 = 0;
  for (int i = 0; i < m; ++i) {
    const double x = d.sample(rng);
    below_half += x < 1.0;
    below_03 += x < 0.3;
  }
  CHECK(close(below_half / static_cast<double>(m), d.cdf(1.0), 0.005));
  CHECK(close(below_03 / static_cast<double>(m), d.cdf(0.3), 0.005));
}

TEST_CASE("expected extremes") {
  const auto u = Distribution1D::uniform(0.0, 1.0);  // U[0,2]
  CHECK(close(expected_extreme(u, 1, Extreme::Max), 1.0, 1e-7));
  CHECK(close(expected_extreme(u, 99, Extreme::Max), 1.98, 1e-7));  // 2n/(n+1)
  CHECK(close(expected_extreme(u, 3, Extreme::Min), 0.5, 1e-7));    // 2/(n+1)

  const auto e = Distribution1D::exponential();
  CHECK(close(expected_extreme(e, 2, Extreme::Max), 1.5, 1e-7));
  // E max of n exponentials is the n-th harmonic number
  double h200 = 0.0;
  for (int k = 1; k <= 200; ++k) h200 += 1.0 / k;
  CHECK(close(expected_extreme(e, 200, Extreme::Max), h200, 1e-6));
  CHECK(close(expected_extreme(e, 4, Extreme::Min), 0.25, 1e-8));

  const auto pm = Distribution1D::point_mass();
  CHECK(close(expected_extreme(pm, 17, Extreme::Max), 1.0, 1e-9));
  CHECK(close(expected_extreme(pm, 17, Extreme::Min), 1.0, 1e-9));

  const auto at = Distribution1D::atom_mixture({{0.0, 0.5}, {2.0, 0.5}});
  CHECK(close(expected_extreme(at, 2, Extreme::Max), 1.5, 1e-8));
  CHECK(close(expected_extreme(at, 2, Extreme::Min), 0.5, 1e-8));
}

TEST_CASE("harmonic moments") {
  CHECK(close(Distribution1D::uniform(0.5, 1.5).harmonic_moment(), std::log(3.0), 1e-8));
  CHECK(close(Distribution1D::poly32().harmonic_moment(), 1.5, 1e-8));
  CHECK_THROWS_AS(Distribution1D::exponential().harmonic_moment(), Error);
  CHECK_THROWS_AS(Distribution1D::uniform(0.0, 1.0).harmonic_moment(), Error);
  CHECK_THROWS_AS(Distribution1D::power_law(0.5).harmonic_moment(), Error);
  CHECK_THROWS_AS(Distribution1D::atom_mixture({{0.0, 0.5}, {2.0, 0.5}}).harmonic_moment(),
                  Error);

  // partial harmonic moments used by the threshold solver
  const auto u = Distribution1D::uniform(0.5, 1.5);
  CHECK(close(u.harmonic_moment_below(1.0), std::log(2.0), 1e-8));
  CHECK(u.harmonic_moment_below(0.5) == 0.0);
}

TEST_CASE("two routes to the same truncated moment") {
  // E(2 - 1/X)_+ for the exponential both by quadrature and via Ei
  const auto e = Distribution1D::exponential();
  const double by_quad =
      e.expect([](double x) { return std::max(2.0 - 1.0 / x, 0.0); }, {0.5});
  const double by_ei = 2.0 * std::exp(-0.5) + exp_integral_Ei(-0.5);
  CHECK(close(by_quad, by_ei, 1e-8));

  // uniform[0,2]: E(2 - 1/X)_+ = 3/2 - ln 2 and E(2X - 1)_+ = 9/8
  const auto u = Distribution1D::uniform(0.0, 1.0);
  CHECK(close(u.expect([](double x) { return std::max(2.0 - 1.0 / x, 0.0); }, {0.5}),
              1.5 - std::log(2.0), 1e-8));
  CHECK(close(u.expect([](double x) { return std::max(2.0 * x - 1.0, 0.0); }, {0.5}), 1.125,
              1e-8));
}
