// Timing comparison between the OpenMP kernels and their serial reference
// paths. Run: fairdiv_bench [samples]
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fairdiv/asymptotics.hpp"
#include "fairdiv/worstcase.hpp"

using namespace fairdiv;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace

int main(int argc, char** argv) {
  const long long samples = argc > 1 ? std::atoll(argv[1]) : 200000;
  const int threads = max_threads();
  std::printf("kernel benchmark (max threads: %d)\n\n", threads);

  const auto uni = Distribution1D::uniform(0.0, 1.0);
  const auto band = Distribution1D::uniform(0.5, 1.5);

  std::printf("%-34s %12s %12s %10s\n", "kernel", "time [s]", "value", "speedup");

  struct McCase {
    const char* name;
    const Distribution1D* dist;
    RuleId rule;
    ObjectKind kind;
    int n;
  };
  const McCase cases[] = {
      {"monte-carlo th(1) good n=100", &uni, RuleId::th(1.0), ObjectKind::Good, 100},
      {"monte-carlo bh bad n=100", &band, RuleId::bh(), ObjectKind::Bad, 100},
  };
  for (const McCase& c : cases) {
    auto t0 = std::chrono::steady_clock::now();
    const MCEstimate ref = monte_carlo_pi_reference(*c.dist, c.rule, c.kind, c.n, samples, 7);
    const double t_ref = seconds(t0);

    set_threads(1);
    t0 = std::chrono::steady_clock::now();
    monte_carlo_pi(*c.dist, c.rule, c.kind, c.n, samples, 7);
    const double t_one = seconds(t0);

    set_threads(threads);
    t0 = std::chrono::steady_clock::now();
    const MCEstimate par = monte_carlo_pi(*c.dist, c.rule, c.kind, c.n, samples, 7);
    const double t_par = seconds(t0);

    std::printf("%-34s %12.3f %12.6f %10s\n", (std::string(c.name) + " [reference]").c_str(),
                t_ref, ref.mean, "");
    std::printf("%-34s %12.3f %12.6f %9.2fx\n", (std::string(c.name) + " [1 thread]").c_str(),
                t_one, par.mean, t_ref / t_one);
    std::printf("%-34s %12.3f %12.6f %9.2fx\n", (std::string(c.name) + " [parallel]").c_str(),
                t_par, par.mean, t_ref / t_par);
  }

  {
    set_threads(1);
    auto t0 = std::chrono::steady_clock::now();
    const RatioReport one = cr_search(RuleId::bh(), 6, ObjectKind::Bad, 400, 3);
    const double t_one = seconds(t0);

    set_threads(threads);
    t0 = std::chrono::steady_clock::now();
    const RatioReport par = cr_search(RuleId::bh(), 6, ObjectKind::Bad, 400, 3);
    const double t_par = seconds(t0);

    std::printf("%-34s %12.3f %12.6f %10s\n", "cr-search bh bad n=6 [1 thread]", t_one, one.value,
                "");
    std::printf("%-34s %12.3f %12.6f %9.2fx\n", "cr-search bh bad n=6 [parallel]", t_par,
                par.value, t_one / t_par);
  }
  return 0;
}
