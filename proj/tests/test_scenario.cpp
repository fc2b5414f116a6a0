#include <yaml-cpp/yaml.h>

#include <string>

#include "doctest.h"
#include "sharedctl/errors.hpp"
#include "sharedctl/scenario.hpp"

using namespace sharedctl;

namespace {

const std::string kDir = SHAREDCTL_SCENARIO_DIR;

ScenarioConfig parse(const std::string& text) { return parse_scenario(YAML::Load(text)); }

bool rejects(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError&) {
    return true;
  }
  return false;
}

}  // namespace

TEST_CASE("bundled scenarios load") {
  const ScenarioConfig c1 = load_scenario(kDir + "/case1.scenario");
  CHECK(c1.name == "case1");
  CHECK(c1.steps() == 400);
  CHECK(c1.neighbors.size() == 3);
  CHECK(c1.fault.channel == FaultChannel::Steering);
  CHECK(c1.fault.onset == 10);
  CHECK(c1.driver.k_h == 1.0);
  CHECK(c1.mpc.dt == c1.dt);

  const ScenarioConfig c2 = load_scenario(kDir + "/case2.scenario");
  CHECK(c2.road.kind == RoadModel::Kind::ConstantRadiusCurve);
  CHECK(c2.road.radius == 60.0);
  CHECK(c2.fault.channel == FaultChannel::Acceleration);

  const ScenarioConfig nom = load_scenario(kDir + "/nominal.scenario");
  CHECK(nom.fault.plateau == 0.0);
}

TEST_CASE("defaults") {
  const ScenarioConfig c = parse("name: bare\n");
  CHECK(c.duration == 20.0);
  CHECK(c.dt == 0.05);
  CHECK(c.mode == Mode::Shared);
  CHECK(c.driver.k_h == 1.08);
  CHECK(c.driver.t_h == 0.17);
  CHECK(c.mpc.hp == 10);
  CHECK(c.mpc.hc == 3);
  CHECK(c.apf.alpha_f == 30.0);
  CHECK(c.dpf.sigma_x == 4.0);
}

TEST_CASE("unknown keys are rejected") {
  CHECK(rejects("nmae: x\n"));
  CHECK(rejects("road: {kind: straight, lanes: 3}\n"));
  CHECK(rejects("mpc: {weights: {lateral: 1, curvature: 2}}\n"));
  CHECK(rejects("neighbors:\n  - {role: preceding, lane: 0, gap: 10, speed: 5, color: red}\n"));
  CHECK_FALSE(rejects("mpc: {weights: {lateral: 1}}\n"));
}

TEST_CASE("malformed values are rejected") {
  CHECK(rejects("dt: fast\n"));
  CHECK(rejects("mode: manual\n"));
  CHECK(rejects("task: overtake\n"));
  CHECK(rejects("road: {kind: spiral}\n"));
  CHECK(rejects("road: 3\n"));
  CHECK(rejects("neighbors: {role: preceding}\n"));
  CHECK(rejects("neighbors:\n  - {role: truck, lane: 0, gap: 10, speed: 5}\n"));
  CHECK(rejects("fault: {channel: brakes}\n"));
  CHECK(rejects("- 1\n- 2\n"));
}

TEST_CASE("validation") {
  CHECK(rejects("dt: 0\n"));
  CHECK(rejects("duration: -1\n"));
  CHECK(rejects("duration: 1.01\n"));
  CHECK(rejects("ego: {lane: 2}\n"));
  CHECK(rejects("ego: {speed: 0.1}\n"));
  CHECK(rejects("road: {lane_width: 1.5}\n"));
  CHECK(rejects("neighbors:\n  - {role: leader, lane: 1, gap: 10, speed: 5}\n  - {role: leader, lane: 1, gap: 20, speed: 5}\n"));
  CHECK(rejects("mpc: {hp: 2, hc: 3}\n"));
  CHECK(rejects("driver: {t_h: 0}\n"));
  CHECK(rejects("fault: {ramp: -1}\n"));
  CHECK(rejects("task_weights: {lane_keep: [0.5, 0.5, 0.5]}\n"));
  CHECK_THROWS_AS(load_scenario(kDir + "/missing.scenario"), ConfigError);
}

TEST_CASE("sweep paths") {
  YAML::Node root = load_yaml_file(kDir + "/case1.scenario");
  set_yaml_path(root, "fault.plateau", "0.1");
  set_yaml_path(root, "mpc.weights.steer", "4");
  set_yaml_path(root, "duration", "2");
  const ScenarioConfig c = parse_scenario(root);
  CHECK(c.fault.plateau == 0.1);
  CHECK(c.mpc.weights.steer == 4.0);
  CHECK(c.steps() == 40);

  YAML::Node bad = load_yaml_file(kDir + "/case1.scenario");
  CHECK_THROWS_AS(set_yaml_path(bad, "name.first", "1"), ConfigError);
  CHECK_THROWS_AS(set_yaml_path(bad, "", "1"), ConfigError);
  set_yaml_path(bad, "fault.magnitude", "1");
  CHECK_THROWS_AS(parse_scenario(bad), ConfigError);
}
