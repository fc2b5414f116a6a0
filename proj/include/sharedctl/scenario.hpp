#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharedctl/authority.hpp"
#include "sharedctl/controllers.hpp"
#include "sharedctl/faults.hpp"
#include "sharedctl/prediction.hpp"
#include "sharedctl/risk.hpp"
#include "sharedctl/road.hpp"
#include "sharedctl/safe_area.hpp"
#include "sharedctl/vehicle.hpp"

namespace YAML {
class Node;
}

namespace sharedctl {

enum class Task { LaneKeep, LaneChange };
enum class Mode { Shared, AutomationOnly };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& s);

struct RoadSpec {
  RoadModel::Kind kind = RoadModel::Kind::StraightMultiLane;
  double lane_width = 3.5;
  int lane_count = 2;
  double radius = 60.0;
  double length = 1000.0;
};

struct EgoSpec {
  int lane = 0;
  double station = 0.0;
  double speed = 15.0;
};

struct NeighborSpec {
  NeighborRole role = NeighborRole::Preceding;
  int lane = 0;
  double gap = 0.0;  // center-to-center station distance to the ego at t = 0
  double speed = 0.0;
};

struct ReferenceSpec {
  int lane = 0;
  std::optional<double> speed;  // fixed target; otherwise the preceding's speed
};

struct ScenarioConfig {
  std::string name = "scenario";
  double duration = 20.0;
  double dt = 0.05;
  Mode mode = Mode::Shared;
  Task task = Task::LaneKeep;
  RoadSpec road;
  EgoSpec ego;
  std::vector<NeighborSpec> neighbors;
  ReferenceSpec reference;
  FaultProfile fault;
  VehicleParams vehicle;
  PredictionConfig prediction;
  ApfParams apf;
  DpfParams dpf;
  TaskWeights lane_keep_weights = TaskWeights::lane_keep();
  TaskWeights lane_change_weights = TaskWeights::lane_change();
  FuzzySets fuzzy_sets;
  RuleBase rules = RuleBase::standard();
  AllocationParams allocation;
  MpcConfig mpc;
  DriverParams driver;
  CorridorOptions corridor;

  RoadModel make_road() const;
  const TaskWeights& task_weights() const { return task == Task::LaneKeep ? lane_keep_weights : lane_change_weights; }
  int steps() const;
  // Throws ConfigError describing the first violated constraint.
  void validate() const;
};

YAML::Node load_yaml_file(const std::string& path);
ScenarioConfig parse_scenario(const YAML::Node& root);
ScenarioConfig load_scenario(const std::string& path);

// Sets the value at a dotted path ("fault.plateau", "mpc.weights.steer"),
// creating missing sections. Unknown names surface when the result is parsed.
void set_yaml_path(YAML::Node& root, const std::string& dotted, const std::string& value);

}  // namespace sharedctl
