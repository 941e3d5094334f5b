#include "fairdiv/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairdiv/core.hpp"

namespace fairdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard-form tableau: minimize c.x s.t. A x = b, x >= 0. Columns are the
// shifted originals, then slacks, then artificials; Bland's rule throughout.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0), b_(static_cast<size_t>(rows), 0.0) {}

  double& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
  double& rhs(int r) { return b_[static_cast<size_t>(r)]; }
  double rhs(int r) const { return b_[static_cast<size_t>(r)]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c < cols_; ++c) at(pr, c) *= inv;
    rhs(pr) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (int c = 0; c < cols_; ++c) at(r, c) -= factor * at(pr, c);
      rhs(r) -= factor * rhs(pr);
      at(r, pc) = 0.0;
    }
  }

 private:
  int rows_, cols_;
  std::vector<double> a_;
  std::vector<double> b_;
};

struct Phase {
  Tableau* t;
  std::vector<int>* basis;
  std::vector<double> cost;   // cost per column
  double tol;
  int max_iters;
};

// Returns reduced cost of column c given the basis costs.
double reduced_cost(const Phase& p, const std::vector<double>& basis_cost, int c) {
  double d = p.cost[static_cast<size_t>(c)];
  for (int r = 0; r < p.t->rows(); ++r) d -= basis_cost[static_cast<size_t>(r)] * p.t->at(r, c);
  return d;
}

// Runs the simplex loop with Bland's rule; `allowed` masks columns that may enter.
int run_phase(Phase& p, const std::vector<bool>& allowed) {
  int iters = 0;
  std::vector<double> basis_cost(static_cast<size_t>(p.t->rows()));
  while (true) {
    for (int r = 0; r < p.t->rows(); ++r) basis_cost[static_cast<size_t>(r)] = p.cost[static_cast<size_t>((*p.basis)[static_cast<size_t>(r)])];

    int entering = -1;
    for (int c = 0; c < p.t->cols(); ++c) {
      if (!allowed[static_cast<size_t>(c)]) continue;
      if (reduced_cost(p, basis_cost, c) < -p.tol) {
        entering = c;  // Bland: lowest index
        break;
      }
    }
    if (entering < 0) return iters;

    int leaving = -1;
    double best_ratio = kInf;
    for (int r = 0; r < p.t->rows(); ++r) {
      const double a = p.t->at(r, entering);
      if (a > p.tol) {
        const double ratio = p.t->rhs(r) / a;
        if (ratio < best_ratio - p.tol ||
            (ratio < best_ratio + p.tol &&
             (leaving < 0 || (*p.basis)[static_cast<size_t>(r)] < (*p.basis)[static_cast<size_t>(leaving)]))) {
          best_ratio = ratio;
          leaving = r;
        }
      }
    }
    if (leaving < 0) throw Error(ErrorCode::Unbounded, "linear program is unbounded");

    p.t->pivot(leaving, entering);
    (*p.basis)[static_cast<size_t>(leaving)] = entering;
    if (++iters > p.max_iters)
      throw Error(ErrorCode::IterationLimit, "simplex iteration cap exceeded");
  }
}

}  // namespace

SimplexResult simplex_solve(const LinearProgram& lp, double tol) {
  const int nv = lp.variables();
  if (nv == 0) throw Error(ErrorCode::Infeasible, "no variables");
  if (static_cast<int>(lp.lower.size()) != nv || static_cast<int>(lp.upper.size()) != nv)
    throw Error(ErrorCode::Infeasible, "bounds do not match variable count");

  // Shift x = lower + y so every variable starts at 0; finite upper bounds
  // become extra <= rows.
  std::vector<double> shift = lp.lower;
  std::vector<double> c(lp.objective);
  if (lp.sense == LinearProgram::Sense::Maximize)
    for (double& v : c) v = -v;

  struct Row {
    std::vector<double> a;
    double b;
    bool is_eq;
  };
  std::vector<Row> rows;
  for (size_t i = 0; i < lp.eq_rows.size(); ++i) {
    double b = lp.eq_rhs[i];
    for (int j = 0; j < nv; ++j) b -= lp.eq_rows[i][static_cast<size_t>(j)] * shift[static_cast<size_t>(j)];
    rows.push_back({lp.eq_rows[i], b, true});
  }
  for (size_t i = 0; i < lp.le_rows.size(); ++i) {
    double b = lp.le_rhs[i];
    for (int j = 0; j < nv; ++j) b -= lp.le_rows[i][static_cast<size_t>(j)] * shift[static_cast<size_t>(j)];
    rows.push_back({lp.le_rows[i], b, false});
  }
  for (int j = 0; j < nv; ++j) {
    if (lp.upper[static_cast<size_t>(j)] == kInf) continue;
    std::vector<double> a(static_cast<size_t>(nv), 0.0);
    a[static_cast<size_t>(j)] = 1.0;
    rows.push_back({std::move(a), lp.upper[static_cast<size_t>(j)] - shift[static_cast<size_t>(j)], false});
  }

  const int m = static_cast<int>(rows.size());
  int slacks = 0;
  for (const Row& r : rows)
    if (!r.is_eq) ++slacks;

  const int cols = nv + slacks + m;  // artificial per row keeps the setup uniform
  Tableau t(m, cols);
  std::vector<int> basis(static_cast<size_t>(m), -1);
  std::vector<bool> is_artificial(static_cast<size_t>(cols), false);

  int slack_at = nv;
  for (int r = 0; r < m; ++r) {
    const bool flip = rows[static_cast<size_t>(r)].b < 0.0;
    const double sign = flip ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) t.at(r, j) = sign * rows[static_cast<size_t>(r)].a[static_cast<size_t>(j)];
    t.rhs(r) = sign * rows[static_cast<size_t>(r)].b;
    if (!rows[static_cast<size_t>(r)].is_eq) {
      t.at(r, slack_at) = sign * 1.0;
      ++slack_at;
    }
  }
  // Use a nonnegative slack as the initial basic variable where possible,
  // otherwise attach an artificial.
  int artificial_at = nv + slacks;
  for (int r = 0; r < m; ++r) {
    int candidate = -1;
    for (int cidx = nv; cidx < nv + slacks; ++cidx) {
      if (t.at(r, cidx) == 1.0) {
        bool unit = true;
        for (int r2 = 0; r2 < m; ++r2)
          if (r2 != r && t.at(r2, cidx) != 0.0) unit = false;
        if (unit) {
          candidate = cidx;
          break;
        }
      }
    }
    if (candidate >= 0) {
      basis[static_cast<size_t>(r)] = candidate;
    } else {
      t.at(r, artificial_at) = 1.0;
      is_artificial[static_cast<size_t>(artificial_at)] = true;
      basis[static_cast<size_t>(r)] = artificial_at;
      ++artificial_at;
    }
  }

  const int max_iters = 10 * (m + cols);

  // Phase 1: minimize the sum of artificials.
  Phase phase{&t, &basis, std::vector<double>(static_cast<size_t>(cols), 0.0), tol, max_iters};
  bool any_artificial = false;
  for (int cidx = 0; cidx < cols; ++cidx)
    if (is_artificial[static_cast<size_t>(cidx)]) {
      phase.cost[static_cast<size_t>(cidx)] = 1.0;
      any_artificial = true;
    }
  int total_iters = 0;
  if (any_artificial) {
    std::vector<bool> allowed(static_cast<size_t>(cols), true);
    total_iters += run_phase(phase, allowed);
    double infeas = 0.0;
    for (int r = 0; r < m; ++r)
      if (is_artificial[static_cast<size_t>(basis[static_cast<size_t>(r)])]) infeas += t.rhs(r);
    if (infeas > 1e-7) throw Error(ErrorCode::Infeasible, "linear program is infeasible");

    // Drive leftover artificials out of the basis; an all-zero pivot row means
    // the constraint was redundant and the artificial can stay at level 0.
    for (int r = 0; r < m; ++r) {
      if (!is_artificial[static_cast<size_t>(basis[static_cast<size_t>(r)])]) continue;
      int pc = -1;
      for (int cidx = 0; cidx < nv + slacks; ++cidx) {
        if (std::fabs(t.at(r, cidx)) > tol) {
          pc = cidx;
          break;
        }
      }
      if (pc >= 0) {
        t.pivot(r, pc);
        basis[static_cast<size_t>(r)] = pc;
      }
    }
  }

  // Phase 2: original costs; artificial columns may not re-enter.
  phase.cost.assign(static_cast<size_t>(cols), 0.0);
  for (int j = 0; j < nv; ++j) phase.cost[static_cast<size_t>(j)] = c[static_cast<size_t>(j)];
  std::vector<bool> allowed(static_cast<size_t>(cols), true);
  for (int cidx = 0; cidx < cols; ++cidx)
    if (is_artificial[static_cast<size_t>(cidx)]) allowed[static_cast<size_t>(cidx)] = false;
  total_iters += run_phase(phase, allowed);

  SimplexResult res;
  res.iterations = total_iters;
  res.x.assign(static_cast<size_t>(nv), 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[static_cast<size_t>(r)] < nv) res.x[static_cast<size_t>(basis[static_cast<size_t>(r)])] = t.rhs(r);
  for (int j = 0; j < nv; ++j) res.x[static_cast<size_t>(j)] += shift[static_cast<size_t>(j)];

  double obj = 0.0;
  for (int j = 0; j < nv; ++j) obj += lp.objective[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];
  res.objective = obj;
  return res;
}

}  // namespace fairdiv
