#include "fairdiv/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "fairdiv/core.hpp"

namespace fairdiv {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double tol;
  int max_depth;
};

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const SimpsonState& st, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol || (b - a) < 1e-300)
    return left + right + delta / 15.0;
  if (depth >= st.max_depth)
    throw Error(ErrorCode::QuadratureNonConvergence,
                "adaptive Simpson hit the recursion cap");
  const double half_tol = 0.5 * tol;
  return adaptive(st, a, m, fa, flm, fm, left, half_tol, depth + 1) +
         adaptive(st, m, b, fm, frm, fb, right, half_tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opts) {
  if (a == b) return 0.0;
  SimpsonState st{f, opts.abs_tol, opts.max_depth};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, a, b);
  return adaptive(st, a, b, fa, fm, fb, whole, opts.abs_tol, 0);
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& splits, QuadratureOptions opts) {
  std::vector<double> pts{a};
  for (double s : splits)
    if (s > a && s < b) pts.push_back(s);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  double total = 0.0;
  QuadratureOptions piece = opts;
  piece.abs_tol = opts.abs_tol / static_cast<double>(pts.size());
  for (size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(f, pts[i], pts[i + 1], piece);
  return total;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             QuadratureOptions opts) {
  // t = a + u/(1-u), dt = du/(1-u)^2 maps [0,1) onto [a, inf).
  auto g = [&f, a](double u) {
    if (u >= 1.0) return 0.0;
    const double one_minus = 1.0 - u;
    const double t = a + u / one_minus;
    const double val = f(t);
    return val / (one_minus * one_minus);
  };
  return integrate(g, 0.0, 1.0 - 1e-14, opts);
}

}  // namespace fairdiv
