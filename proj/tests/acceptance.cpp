// Acceptance suite: one pass/fail line per criterion.
// Usage: acceptance <path-to-cli> <fixtures-dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "fairdiv/asymptotics.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/opt.hpp"
#include "fairdiv/special.hpp"
#include "fairdiv/worstcase.hpp"
#include "test_helpers.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

std::string g_cli;
int g_fail_count = 0;
std::vector<std::string> g_notes;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void expect_close(double got, double want, double tol, const std::string& what) {
    if (!(std::fabs(got - want) <= tol)) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: got %.12g, want %.12g (tol %.3g)", what.c_str(), got,
                    want, tol);
      detail += buf;
    }
  }
};

void report(int idx, const std::string& name, const Check& c, double secs) {
  if (c.ok) {
    std::printf("[PASS] criterion %d: %s (%.1fs)\n", idx, name.c_str(), secs);
  } else {
    std::printf("[FAIL] criterion %d: %s (%.1fs) -- %s\n", idx, name.c_str(), secs,
                c.detail.c_str());
    ++g_fail_count;
  }
  std::fflush(stdout);
}

void run_criterion(int idx, const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(idx, name, c, secs);
}

std::string run_cli(const std::string& args) {
  const std::string out = "acceptance_cli_out.txt";
  const std::string cmd = g_cli + " " + args + " > " + out + " 2>&1";
  if (std::system(cmd.c_str()) == -1) return "";
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out.c_str());
  return ss.str();
}

void criterion1(Check& c) {
  const DiscreteProblem p = example1();

  const auto ut = agent_expected_values(p, RuleId::ut());
  c.expect_close(ut[0] * 4.0, 0.25, 1e-9, "utilitarian cost a");
  c.expect_close(ut[1] * 4.0, 2.75, 1e-9, "utilitarian cost b");
  c.expect_close(social_value(p, RuleId::ut()) * 4.0, 3.0, 1e-9, "utilitarian total");

  const OptimalFairResult opt = optimal_fair_rule(p);
  c.expect_close(opt.social_value * 4.0, 3.1875, 1e-9, "optimal fair cost");
  c.expect_close(opt.rule.allocations[2][0], 3.0 / 8.0, 1e-7, "town C share a");
  c.expect_close(opt.rule.allocations[2][1], 5.0 / 8.0, 1e-7, "town C share b");
  const DiscreteProblem q = normalize_problem(p);
  double agent_b = 0.0;
  for (size_t s = 0; s < q.states.size(); ++s)
    agent_b += q.states[s].prob * opt.rule.allocations[s][1] * q.states[s].values[1];
  c.expect_close(agent_b * 4.0, 2.0, 1e-9, "optimal agent-b cost");

  const auto pro = agent_expected_values(p, RuleId::pro());
  c.expect_close(pro[0] * 4.0, 515.0 / 288.0, 1e-9, "proportional cost a");
  c.expect_close(pro[1] * 4.0, 515.0 / 288.0, 1e-9, "proportional cost b");

  const auto bh = agent_expected_values(p, RuleId::bh());
  c.expect_close(bh[0] * 4.0, 67.0 / 48.0, 1e-9, "bottom-heavy cost a");
  c.expect_close(bh[1] * 4.0, 15.0 / 8.0, 1e-9, "bottom-heavy cost b");
  c.expect_close(social_value(p, RuleId::bh()) * 4.0, 157.0 / 48.0, 1e-9, "bottom-heavy total");

  const double bh_vs_opt = social_value(p, RuleId::bh()) / opt.social_value;
  c.expect_close(bh_vs_opt, 157.0 / 153.0, 1e-9, "BH/OPT");
  c.expect_close(bh_vs_opt, 1.026, 1e-3, "BH/OPT headline (102.6%)");
  const double pro_vs_opt = social_value(p, RuleId::pro()) / opt.social_value;
  c.expect_close(pro_vs_opt, 515.0 / 459.0, 1e-9, "PRO/OPT");
  c.expect_close(pro_vs_opt, 1.12, 5e-3, "PRO/OPT headline (112%)");
}

void criterion2(Check& c) {
  CounterRng rng(20260810, 0);
  int checked = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const ObjectKind kind = rep % 2 ? ObjectKind::Good : ObjectKind::Bad;
    const DiscreteProblem p = normalize_problem(random_problem(rng, kind, 6, 20));
    std::vector<RuleId> rules{RuleId::es(), RuleId::pro()};
    if (kind == ObjectKind::Good) {
      rules.push_back(RuleId::th(0.1));
      rules.push_back(RuleId::th(0.5));
      rules.push_back(RuleId::th(1.0));
    } else {
      rules.push_back(RuleId::bh());
    }
    for (const RuleId& rule : rules) {
      const WelfareReport r = verify_fair_share(p, rule, 1e-9);
      if (!r.fs_holds()) {
        c.expect(false, rule_name(rule) + " violated fair share on battery problem " +
                            std::to_string(rep));
        return;
      }
      ++checked;
    }
  }
  c.expect(checked > 0, "battery empty");

  const WelfareReport ut = verify_fair_share(ut_counterexample(), RuleId::ut(), 1e-9);
  c.expect(!ut.fs_holds(), "utilitarian should violate fair share on the two-state example");
  c.expect_close(ut.per_agent[0], 0.1, 1e-12, "starved agent value");
  c.expect(!ut.fs_ok[0], "agent 0 should be below the 0.5 floor");
}

void criterion3(Check& c) {
  SamplingPlan plan;
  plan.random_profiles = 10000;

  for (int n : {2, 3, 4}) {
    const DominationVerdict vs_pro = dominates(RuleId::bh(), RuleId::pro(), ObjectKind::Bad, n, plan);
    c.expect(vs_pro.outcome == DominationOutcome::DominatesWeakly,
             "BH should dominate PRO at n=" + std::to_string(n));
    const DominationVerdict vs_es = dominates(RuleId::bh(), RuleId::es(), ObjectKind::Bad, n, plan);
    c.expect(vs_es.outcome == DominationOutcome::DominatesWeakly,
             "BH should dominate ES at n=" + std::to_string(n));
  }

  // two agents: the theta = 1 rule dominates every smaller theta, strictly
  // somewhere in the (1/2, 1) ratio band
  RuleWorkspace ws;
  for (double theta : {0.25, 0.5, 0.9}) {
    const DominationVerdict v = dominates(RuleId::th(1.0), RuleId::th(theta), ObjectKind::Good, 2, plan);
    c.expect(v.outcome == DominationOutcome::DominatesWeakly,
             "TH(1) should dominate TH(" + std::to_string(theta) + ")");
    const ValueProfile in_band{{0.75, 1.0}};
    const double gap = realized_welfare(RuleId::th(1.0), in_band.values, ObjectKind::Good, ws) -
                       realized_welfare(RuleId::th(theta), in_band.values, ObjectKind::Good, ws);
    c.expect(gap > 1e-9, "strict witness in the (1/2,1) band for theta=" + std::to_string(theta));
  }

  // three agents: theta = 1/2 and theta = 1 are incomparable, on the two
  // profiles that separate them
  const double theta = 0.5;
  const ValueProfile spread{{0.75, 0.75, 1.5}};
  const ValueProfile low{{theta / 3.0, 1.75 - theta / 3.0, 1.25}};
  SamplingPlan plan3 = plan;
  plan3.extra_profiles = {spread, low};
  const DominationVerdict v3 = dominates(RuleId::th(theta), RuleId::th(1.0), ObjectKind::Good, 3, plan3);
  c.expect(v3.outcome == DominationOutcome::Incomparable, "TH(0.5) vs TH(1) should be incomparable");
  c.expect(realized_welfare(RuleId::th(1.0), spread.values, ObjectKind::Good, ws) >
               realized_welfare(RuleId::th(theta), spread.values, ObjectKind::Good, ws) + 1e-9,
           "spread profile should favor theta=1");
  c.expect(realized_welfare(RuleId::th(theta), low.values, ObjectKind::Good, ws) >
               realized_welfare(RuleId::th(1.0), low.values, ObjectKind::Good, ws) + 1e-9,
           "low-agent profile should favor theta=1/2");

  for (int n : {3, 4}) {
    const double t = static_cast<double>(n - 1) / n;
    const DominationVerdict v = dominates(RuleId::th(t), RuleId::pro(), ObjectKind::Good, n, plan);
    c.expect(v.outcome == DominationOutcome::DominatesWeakly,
             "TH((n-1)/n) should dominate PRO at n=" + std::to_string(n));
  }
}

void criterion4(Check& c) {
  const int restarts = 300;
  for (int n = 2; n <= 5; ++n) {
    for (double theta : {0.25, 0.5, 1.0}) {
      const double want = cr_closed_form_top_heavy(n, Theta(theta));
      const double got = cr_search(RuleId::th(theta), n, ObjectKind::Good, restarts, 1).value;
      char what[128];
      std::snprintf(what, sizeof(what), "top-heavy search vs formula at n=%d theta=%g", n, theta);
      c.expect_close(got, want, 1e-3 * want, what);
    }
    const double want_pro = cr_closed_form_proportional(n, ObjectKind::Good);
    const double got_pro = cr_search(RuleId::pro(), n, ObjectKind::Good, restarts, 1).value;
    c.expect(std::fabs(got_pro - want_pro) <= 1e-3 * want_pro,
             "proportional search gap at n=" + std::to_string(n));
  }

  for (int n = 2; n <= 8; ++n) {
    const auto [lo, hi] = cr_bounds_bottom_heavy(n);
    const double got = cr_search(RuleId::bh(), n, ObjectKind::Bad, restarts, 1).value;
    c.expect(got >= lo - 1e-6 && got <= hi + 1e-6,
             "bottom-heavy search outside bounds at n=" + std::to_string(n));
    if (n == 2) c.expect_close(got, 1.125, 1e-6, "two-agent bottom-heavy supremum");
  }

  // large-n trend: the closed forms grow like sqrt(n)/2 and n/4
  double prev_ratio = 1e9;
  for (int n : {4, 16, 64}) {
    const double ratio = cr_closed_form_top_heavy(n, Theta(1.0)) / (std::sqrt(n) / 2.0);
    c.expect(ratio > 1.0 && ratio < prev_ratio, "sqrt-n trend for the top-heavy ratio");
    prev_ratio = ratio;
  }
  c.expect(cr_bounds_bottom_heavy(64).first > 16.0 && cr_bounds_bottom_heavy(64).second < 18.0,
           "n/4 trend for the bottom-heavy bracket");
}

void criterion5(Check& c) {
  for (int n = 2; n <= 6; ++n) {
    const DiscreteProblem h = hard_instance_bad(n);
    const double ratio = optimal_fair_rule(h).social_value / unconstrained_optimum(h);
    const double want = (n + 1.0) * (n + 1.0) / (4.0 * n);
    c.expect(ratio >= want - 1e-6, "bad hard instance too easy at n=" + std::to_string(n));
  }
  for (auto [n, m] : {std::pair{4, 2}, std::pair{9, 3}, std::pair{16, 4}}) {
    const double cap = static_cast<double>(m) * m / n - static_cast<double>(m) / n + 1.0;
    const double lp = optimal_fair_rule(hard_instance_good(n, m)).social_value;
    c.expect(lp <= cap + 1e-6, "good hard instance beats the cap at n=" + std::to_string(n));
  }
}

void criterion6(Check& c) {
  const long long samples = 1000000;
  const int n = 200;

  struct Cfg {
    const char* name;
    Distribution1D dist;
    RuleId rule;
    ObjectKind kind;
    double structural_slack;  // wider for heavy tails
    double limit_constant;    // n -> infinity value; NaN when not comparable at n=200
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<Cfg> cfgs = {
      {"th(1) uniform[0,2]", Distribution1D::uniform(0.0, 1.0), RuleId::th(1.0),
       ObjectKind::Good, 0.02, 1.0 / (1.0 / 16.0 + std::log(2.0))},
      // the exponential's expected max grows like ln n, so at n = 200 the
      // ratio sits far below its n -> infinity constant; the consistency
      // check against the matching-n formula is the meaningful one
      {"th(1) exponential", Distribution1D::exponential(), RuleId::th(1.0), ObjectKind::Good,
       0.05, nan},
      {"bh uniform[1/2,3/2]", Distribution1D::uniform(0.5, 1.5), RuleId::bh(), ObjectKind::Bad,
       0.02, std::exp(1.0) - 1.0},
      {"pro uniform[1/2,3/2]", Distribution1D::uniform(0.5, 1.5), RuleId::pro(), ObjectKind::Bad,
       0.02, 2.0 / std::log(3.0)},
  };

  for (const Cfg& cfg : cfgs) {
    const MCEstimate est = monte_carlo_pi(cfg.dist, cfg.rule, cfg.kind, n, samples, 7);
    double formula_at_n = 0.0;
    if (cfg.rule.kind == RuleKind::TopHeavy)
      formula_at_n = pi_th_limit_good(cfg.dist, Theta(cfg.rule.theta), n);
    else if (cfg.rule.kind == RuleKind::BottomHeavy)
      formula_at_n = pi_bh_limit_bad(cfg.dist, n);
    else
      formula_at_n = pi_pro_limit_bad(cfg.dist, n);

    c.expect(std::fabs(est.mean - formula_at_n) <=
                 3.0 * (est.std_error + cfg.structural_slack * formula_at_n),
             std::string(cfg.name) + " disagrees with the matching-n formula");
    if (std::isfinite(cfg.limit_constant)) {
      c.expect(std::fabs(est.mean - cfg.limit_constant) <=
                   3.0 * est.std_error + 0.02 * cfg.limit_constant,
               std::string(cfg.name) + " disagrees with the limit constant");
    }
  }

  // the closed forms themselves, by quadrature, against the known constants
  c.expect_close(pi_th_limit_good(Distribution1D::uniform(0.0, 1.0), Theta(1.0), kLimit),
                 1.0 / (1.0 / 16.0 + std::log(2.0)), 1e-6, "uniform top-heavy limit");
  c.expect_close(pi_th_limit_good(Distribution1D::exponential(), Theta(1.0), kLimit),
                 1.0 / (1.0 - 2.0 * std::exp(-0.5) - exp_integral_Ei(-0.5)), 1e-6,
                 "exponential top-heavy limit");
  c.expect_close(pi_bh_limit_bad(Distribution1D::uniform(0.5, 1.5), kLimit),
                 std::exp(1.0) - 1.0, 1e-6, "bottom-heavy band limit");
  c.expect_close(pi_pro_limit_bad(Distribution1D::uniform(0.5, 1.5), kLimit),
                 2.0 / std::log(3.0), 1e-6, "proportional band limit");
  c.expect_close(pi_pro_limit_good(Distribution1D::uniform(0.0, 1.0), kLimit), 1.5, 1e-6,
                 "proportional uniform limit");
}

void criterion7(Check& c) {
  const GrowthFit sq = growth_check(Distribution1D::poly32(), RuleId::bh(), ObjectKind::Bad,
                                    {64, 256, 1024}, GrowthModel::SqrtN, 40000, 7);
  const double coef_want = 2.0 / (3.0 * std::sqrt(M_PI));
  c.expect(std::fabs(sq.coefficient - coef_want) <= 0.2 * coef_want,
           "sqrt-n coefficient off: got " + std::to_string(sq.coefficient));
  c.expect(sq.consistent, "sqrt-n fit inconsistent");

  const GrowthFit nl = growth_check(Distribution1D::uniform(0.0, 1.0), RuleId::pro(),
                                    ObjectKind::Bad, {64, 256, 1024}, GrowthModel::NOverLogN,
                                    40000, 7);
  c.expect(nl.r2 >= 0.95, "n/log n fit has r2 " + std::to_string(nl.r2));

  const auto atoms = Distribution1D::atom_mixture({{0.0, 0.5}, {2.0, 0.5}});
  const MCEstimate bh = monte_carlo_pi(atoms, RuleId::bh(), ObjectKind::Bad, 400, 40000, 7);
  const MCEstimate pro = monte_carlo_pi(atoms, RuleId::pro(), ObjectKind::Bad, 400, 40000, 7);
  c.expect(bh.mean < 1.05, "atom-at-zero bottom-heavy ratio should collapse to 1");
  c.expect(pro.mean < 1.05, "atom-at-zero proportional ratio should collapse to 1");
}

void criterion8(Check& c) {
  const auto exp = Distribution1D::exponential();
  const double dev = exp.abs_deviation();
  c.expect_close(dev, 2.0 / std::exp(1.0), 1e-8, "mean absolute deviation");
  const DeviationBounds b = lemma2_bounds(exp);
  const double limit = pi_th_limit_good(exp, Theta(1.0), kLimit);
  c.expect(b.lower <= limit, "lower deviation bound violated");
  c.expect(limit <= b.upper, "upper deviation bound violated");
  c.expect_close(limit, 2.884, 2e-3, "exponential limit headline");
}

void criterion9(Check& c) {
  const std::vector<std::string> cmds = {
      "simulate --dist uniform:0,1 --rule th --theta 1 --kind good --n 50 --samples 50000 --seed 7",
      "simulate --dist uniform:0.5,1.5 --rule bh --kind bad --n 50 --samples 50000 --seed 11",
      "simulate --dist atom:0.5,0,0.5,2 --rule pro --kind bad --n 32 --samples 20000 --seed 3",
      "worstcase --rule bh --n 3 --kind bad --mode search --restarts 80 --seed 5",
      "worstcase --rule th --theta 0.5 --n 4 --kind good --mode both --restarts 80 --seed 9",
      "optimal --problem fixtures/example1.json --format json",
  };
  for (const std::string& cmd : cmds) {
    const std::string a = run_cli(cmd);
    const std::string b = run_cli(cmd);
    c.expect(!a.empty(), "no output from: " + cmd);
    c.expect(a == b, "output differs between runs: " + cmd);
  }

  const MCEstimate m1 = monte_carlo_pi(Distribution1D::poly32(), RuleId::bh(), ObjectKind::Bad,
                                       64, 30000, 123);
  const MCEstimate m2 = monte_carlo_pi(Distribution1D::poly32(), RuleId::bh(), ObjectKind::Bad,
                                       64, 30000, 123);
  c.expect(m1.mean == m2.mean && m1.std_error == m2.std_error,
           "library Monte Carlo estimates not bit-identical");
}

}  // namespace

int main(int argc, char** argv) {
  g_cli = argc > 1 ? argv[1] : "./fairdiv";
  // fixtures dir: the determinism commands reference fixtures/ relative paths
  if (argc > 2) {
    const std::string fixtures = argv[2];
    const auto pos = fixtures.rfind("/fixtures");
    if (pos != std::string::npos) {
      const std::string root = fixtures.substr(0, pos);
      if (chdir(root.c_str()) != 0) {
        std::fprintf(stderr, "cannot chdir to %s\n", root.c_str());
        return 1;
      }
    }
  }

  run_criterion(1, "repairmen example reproduction", criterion1);
  run_criterion(2, "fair-share property suite", criterion2);
  run_criterion(3, "ex-post domination suite", criterion3);
  run_criterion(4, "worst-case closed form vs search", criterion4);
  run_criterion(5, "hard instances pin the prior-dependent ratio", criterion5);
  run_criterion(6, "asymptotic limits vs Monte Carlo", criterion6);
  run_criterion(7, "growth laws", criterion7);
  run_criterion(8, "deviation sandwich", criterion8);
  run_criterion(9, "seeded determinism", criterion9);

  if (g_fail_count == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_fail_count);
  return g_fail_count == 0 ? 0 : 1;
}
