#pragma once

#include <functional>
#include <vector>

namespace fairdiv {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  int max_depth = 60;
};

/// Adaptive Simpson on [a, b]. Throws QuadratureNonConvergence when the
/// recursion cap is hit before the local error estimate drops below tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opts = {});

/// Same, but the interval is first cut at the interior split points (kinks,
/// atoms, discontinuities), so each piece is smooth for the Simpson rule.
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& splits, QuadratureOptions opts = {});

/// Integral over [a, +inf) via the substitution t = a + u/(1-u).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             QuadratureOptions opts = {});

}  // namespace fairdiv
