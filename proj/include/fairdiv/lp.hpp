#pragma once

#include <vector>

namespace fairdiv {

/// Dense linear program: optimize objective . x subject to equality rows,
/// <= rows, and per-variable bounds (upper may be +inf).
struct LinearProgram {
  enum class Sense { Minimize, Maximize };

  Sense sense = Sense::Minimize;
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> le_rows;
  std::vector<double> le_rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  int variables() const { return static_cast<int>(objective.size()); }
};

struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

/// Two-phase primal simplex on the dense tableau with Bland's anti-cycling
/// pivot rule (lowest index wins every tie), so the trajectory is
/// deterministic. Iterations are capped at 10 * (rows + columns).
/// Throws Infeasible, Unbounded, or IterationLimit.
SimplexResult simplex_solve(const LinearProgram& lp, double tol = 1e-9);

}  // namespace fairdiv
