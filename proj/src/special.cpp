#include "fairdiv/special.hpp"

#include <cmath>

#include "fairdiv/core.hpp"

namespace fairdiv {

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512090082;

// Ei(x) = gamma + ln|x| + sum_{k>=1} x^k / (k * k!), fast for small |x|.
double ei_series(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 200; ++k) {
    term *= x / k;
    const double add = term / k;
    sum += add;
    if (std::fabs(add) < 1e-18 * (1.0 + std::fabs(sum))) break;
  }
  return kEulerGamma + std::log(std::fabs(x)) + sum;
}

// E1(z) for z > 1 by the modified Lentz continued fraction
// E1(z) = exp(-z) / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))).
double e1_continued_fraction(double z) {
  const double tiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k <= 300; ++k) {
    const double a = -static_cast<double>(k) * k;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z) * h;
}

}  // namespace

double exp_integral_Ei(double x) {
  if (!(x < 0.0)) throw Error(ErrorCode::DomainError, "Ei requires a negative argument");
  if (x >= -1.0) return ei_series(x);
  return -e1_continued_fraction(-x);
}

}  // namespace fairdiv
