#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sharedctl/errors.hpp"
#include "sharedctl/io.hpp"
#include "sharedctl/parallel.hpp"
#include "sharedctl/scenario.hpp"
#include "sharedctl/sim.hpp"

namespace fs = std::filesystem;
using namespace sharedctl;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalAbort = 3;

void write_outputs(const fs::path& dir, const RunResult& r) {
  fs::create_directories(dir);
  std::ofstream trace(dir / "trace.csv");
  write_trace_csv(trace, r.trace);
  std::ofstream summary(dir / "summary.json");
  write_summary_json(summary, r.summary);
  if (!trace || !summary) throw ConfigError("cannot write outputs to " + dir.string());
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_simulate(const std::string& scenario, const std::string& out, const std::string& mode, bool dump) {
  ScenarioConfig cfg = load_scenario(scenario);
  if (!mode.empty()) cfg.mode = *parse_mode(mode);
  const fs::path dir(out);
  fs::create_directories(dir);
  std::ofstream geometry;
  RunHooks hooks;
  if (dump) {
    geometry.open(dir / "geometry.jsonl");
    hooks.on_corridor = [&geometry](int k, const SafeArea& area) { write_geometry_line(geometry, k, area); };
  }
  try {
    const RunResult r = simulate(cfg, hooks);
    write_outputs(dir, r);
    std::cout << "wrote " << r.trace.size() << " steps to " << dir.string() << '\n';
  } catch (const NumericalAbort& e) {
    write_outputs(dir, e.partial());
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  }
  return kOk;
}

int cmd_risk_eval(const std::string& input) {
  std::string text;
  if (input.empty() || input == "-") {
    text = read_all(std::cin);
  } else {
    std::ifstream f(input);
    if (!f) throw ConfigError("cannot open " + input);
    text = read_all(f);
  }
  std::cout << evaluate_risk_json(text) << '\n';
  return kOk;
}

std::vector<RiskPair> read_risk_csv(std::istream& in) {
  std::vector<RiskPair> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("fis-eval: line " + std::to_string(lineno) + ": expected r_y,r_x");
    try {
      const double ry = std::stod(line.substr(0, comma));
      const double rx = std::stod(line.substr(comma + 1));
      rows.emplace_back(ry, rx);
    } catch (const std::logic_error&) {
      if (lineno == 1) continue;  // header
      throw ConfigError("fis-eval: line " + std::to_string(lineno) + ": not a number");
    }
  }
  return rows;
}

int cmd_fis_eval(const std::string& input, const std::string& scenario, int grid) {
  FuzzySets sets;
  RuleBase rules = RuleBase::standard();
  if (!scenario.empty()) {
    const ScenarioConfig cfg = load_scenario(scenario);
    sets = cfg.fuzzy_sets;
    rules = cfg.rules;
  }
  std::vector<RiskPair> rows;
  if (grid > 0) {
    rows = risk_grid(grid);
  } else if (input.empty() || input == "-") {
    rows = read_risk_csv(std::cin);
  } else {
    std::ifstream f(input);
    if (!f) throw ConfigError("cannot open " + input);
    rows = read_risk_csv(f);
  }
  const std::vector<double> alpha = fis_batch_parallel(rows, sets, rules);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (grid > 0) std::cout << format_number(rows[i].first) << ',' << format_number(rows[i].second) << ',';
    std::cout << format_number(alpha[i]) << '\n';
  }
  return kOk;
}

std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string v; std::getline(ss, v, ',');) {
    if (!v.empty()) out.push_back(v);
  }
  if (out.empty()) throw ConfigError("sweep: --values is empty");
  return out;
}

int cmd_sweep(const std::string& scenario, const std::string& param, const std::string& values,
              const std::string& out, bool serial) {
  const YAML::Node base = load_yaml_file(scenario);
  std::vector<ScenarioConfig> configs;
  const std::vector<std::string> vals = split_values(values);
  for (const std::string& v : vals) {
    YAML::Node copy = YAML::Clone(base);
    set_yaml_path(copy, param, v);
    configs.push_back(parse_scenario(copy));
  }
  const std::vector<SweepOutcome> outcomes = serial ? run_sweep_serial(configs) : run_sweep_parallel(configs);
  nlohmann::json all = nlohmann::json::array();
  int status = kOk;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SweepOutcome& o = outcomes[i];
    std::ostringstream s;
    write_summary_json(s, o.result.summary);
    nlohmann::json entry;
    entry["param"] = param;
    entry["value"] = vals[i];
    entry["status"] = o.status;
    entry["summary"] = nlohmann::json::parse(s.str());
    all.push_back(entry);
    status = std::max(status, o.status);
    if (!out.empty()) write_outputs(fs::path(out) / (param + "=" + vals[i]), o.result);
  }
  std::cout << all.dump(2) << '\n';
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shared-control driving simulator under automation degradation"};
  app.require_subcommand(1);

  std::string scenario, out, mode, input, param, values;
  bool dump = false, serial = false;
  int grid = 0;

  auto* sim = app.add_subcommand("simulate", "Run one scenario and write trace.csv and summary.json");
  sim->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out, "Output directory")->required();
  sim->add_option("--mode", mode, "Override the scenario mode")->check(CLI::IsMember({"shared", "automation-only"}));
  sim->add_flag("--dump-geometry", dump, "Also write geometry.jsonl (triangulation and corridor per step)");

  auto* risk = app.add_subcommand("risk-eval", "Evaluate a risk request (JSON on stdin or --input)");
  risk->add_option("--input", input, "JSON request file, '-' for stdin");

  auto* fis = app.add_subcommand("fis-eval", "Map r_y,r_x CSV rows to automation authority");
  fis->add_option("--input", input, "CSV file of r_y,r_x rows, '-' for stdin");
  fis->add_option("--scenario", scenario, "Take fuzzy sets and rules from this scenario")->check(CLI::ExistingFile);
  fis->add_option("--grid", grid, "Evaluate an N x N grid over [0,1]^2 instead (prints r_y,r_x,alpha)")
      ->check(CLI::Range(2, 10000));

  auto* sweep = app.add_subcommand("sweep", "Run a scenario once per value of one parameter");
  sweep->add_option("--scenario", scenario, "Base scenario file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "Dotted parameter path, e.g. fault.plateau")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--out", out, "Write each run's outputs under this directory");
  sweep->add_flag("--serial", serial, "Run sequentially instead of in parallel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sim) return cmd_simulate(scenario, out, mode, dump);
    if (*risk) return cmd_risk_eval(input);
    if (*fis) return cmd_fis_eval(input, scenario, grid);
    if (*sweep) return cmd_sweep(scenario, param, values, out, serial);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const GeometryError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalAbort;
  }
  return kOk;
}
