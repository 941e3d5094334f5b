#pragma once

namespace fairdiv {

/// Exponential integral Ei(x) for x < 0: power series for |x| <= 1 and a
/// continued fraction for x < -1, accurate to about 1e-14. Throws DomainError
/// for x >= 0.
double exp_integral_Ei(double x);

}  // namespace fairdiv
