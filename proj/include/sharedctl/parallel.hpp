#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sharedctl/sim.hpp"

namespace sharedctl {

struct SweepOutcome {
  RunResult result;
  int status = 0;  // CLI exit-code convention: 0 ok, 2 config error, 3 numerical abort
  std::string error;
};

// Independent runs, one private controller set per scenario. The serial
// version is the reference the parallel one is checked against.
std::vector<SweepOutcome> run_sweep_serial(std::span<const ScenarioConfig> configs);
std::vector<SweepOutcome> run_sweep_parallel(std::span<const ScenarioConfig> configs);

using RiskPair = std::pair<double, double>;  // (r_y, r_x)

std::vector<double> fis_batch_serial(std::span<const RiskPair> inputs, const FuzzySets& sets, const RuleBase& rules);
std::vector<double> fis_batch_parallel(std::span<const RiskPair> inputs, const FuzzySets& sets,
                                       const RuleBase& rules);

// Row-major n x n grid over [0, 1]^2, r_y outer.
std::vector<RiskPair> risk_grid(int n);

}  // namespace sharedctl
