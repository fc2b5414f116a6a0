// Serial vs OpenMP timings for the two batch kernels: the FIS surface grid
// and a scenario sweep.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "sharedctl/parallel.hpp"

using namespace sharedctl;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string scenario = argc > 1 ? argv[1] : "";
  std::printf("threads: %d\n", omp_get_max_threads());

  const auto grid = risk_grid(101);
  const FuzzySets sets;
  const RuleBase rules = RuleBase::standard();
  std::vector<double> a, b;
  const double ts = seconds([&] { a = fis_batch_serial(grid, sets, rules); });
  const double tp = seconds([&] { b = fis_batch_parallel(grid, sets, rules); });
  std::printf("fis grid 101x101   serial %.4f s  parallel %.4f s  speedup %.2f  identical %s\n", ts, tp, ts / tp,
              a == b ? "yes" : "no");

  if (scenario.empty()) {
    std::printf("sweep skipped (pass a scenario file to time it)\n");
    return 0;
  }
  ScenarioConfig base = load_scenario(scenario);
  base.duration = 2.0;
  std::vector<ScenarioConfig> configs;
  for (double plateau : {0.0, 0.1, 0.2, 0.3}) {
    ScenarioConfig c = base;
    c.fault.plateau = plateau;
    configs.push_back(c);
  }
  std::vector<SweepOutcome> rs, rp;
  const double ss = seconds([&] { rs = run_sweep_serial(configs); });
  const double sp = seconds([&] { rp = run_sweep_parallel(configs); });
  std::printf("sweep 4 x 2 s       serial %.4f s  parallel %.4f s  speedup %.2f\n", ss, sp, ss / sp);
  return 0;
}
