#include "sharedctl/parallel.hpp"

#include "sharedctl/errors.hpp"

namespace sharedctl {

namespace {

SweepOutcome run_one(const ScenarioConfig& cfg) {
  SweepOutcome out;
  try {
    out.result = simulate(cfg);
  } catch (const NumericalAbort& e) {
    out.result = e.partial();
    out.status = 3;
    out.error = e.what();
  } catch (const ConfigError& e) {
    out.status = 2;
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<SweepOutcome> run_sweep_serial(std::span<const ScenarioConfig> configs) {
  std::vector<SweepOutcome> out(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) out[i] = run_one(configs[i]);
  return out;
}

std::vector<SweepOutcome> run_sweep_parallel(std::span<const ScenarioConfig> configs) {
  std::vector<SweepOutcome> out(configs.size());
  const long n = static_cast<long>(configs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = run_one(configs[i]);
  return out;
}

std::vector<double> fis_batch_serial(std::span<const RiskPair> inputs, const FuzzySets& sets, const RuleBase& rules) {
  std::vector<double> out(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) out[i] = fis_alpha(inputs[i].first, inputs[i].second, sets, rules);
  return out;
}

std::vector<double> fis_batch_parallel(std::span<const RiskPair> inputs, const FuzzySets& sets,
                                       const RuleBase& rules) {
  std::vector<double> out(inputs.size());
  const long n = static_cast<long>(inputs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = fis_alpha(inputs[i].first, inputs[i].second, sets, rules);
  return out;
}

std::vector<RiskPair> risk_grid(int n) {
  if (n < 2) throw ConfigError("risk grid needs at least 2 points per axis");
  std::vector<RiskPair> g;
  g.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.emplace_back(static_cast<double>(i) / (n - 1), static_cast<double>(j) / (n - 1));
  }
  return g;
}

}  // namespace sharedctl
