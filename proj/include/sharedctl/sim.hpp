#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharedctl/scenario.hpp"

namespace sharedctl {

// Constant-velocity lane keeper, tracked in the road frame.
struct NeighborState {
  NeighborRole role = NeighborRole::Preceding;
  int lane = 0;
  double s = 0.0;
  double n = 0.0;
  double v = 0.0;
};

struct TraceRecord {
  int k = 0;
  double t = 0.0;
  VehicleState ego;
  RoadPoint ego_road;
  std::array<std::optional<NeighborState>, 3> neighbors{};
  ControlVector u_a_des;
  ControlVector u_a_f;
  ControlVector u_a_act;
  ControlVector u_h_des;
  ControlVector u_h_act;
  ControlVector u;
  RoadPoint predicted;  // ego road position tau_p ahead
  double r_y = 0.0;
  double r_x = 0.0;
  double alpha = 0.0;
  std::array<int, 2> branch{1, 1};
  double gap_preceding = 0.0;  // bumper-to-bumper; NaN without a preceding vehicle
  double corridor_violation = 0.0;
  bool automation_converged = true;
  bool driver_converged = true;
  bool corridor_fallback = false;
};

struct Summary {
  std::string name;
  Mode mode = Mode::Shared;
  int steps = 0;
  double duration = 0.0;
  double min_gap_preceding = 0.0;  // NaN without a preceding vehicle
  double max_lateral_deviation = 0.0;
  double max_corridor_violation = 0.0;
  bool collision = false;
  double max_r_y = 0.0;
  double max_r_x = 0.0;
  double min_alpha = 1.0;
  double max_alpha = 1.0;
  int automation_nonconverged = 0;
  int driver_nonconverged = 0;
  int corridor_fallbacks = 0;
  bool aborted = false;
  std::string abort_reason;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  Summary summary;
};

// Raised when the state leaves the finite/modelled domain mid-run. Carries
// everything produced up to the offending step.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, RunResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RunResult& partial() const { return partial_; }

 private:
  RunResult partial_;
};

struct RunHooks {
  // Called with each step's corridor before the controllers use it.
  std::function<void(int k, const SafeArea&)> on_corridor;
};

VehicleState initial_ego_state(const ScenarioConfig& cfg, const RoadModel& road);
std::array<std::optional<NeighborState>, 3> neighbors_at(const ScenarioConfig& cfg, const RoadModel& road,
                                                         double t);

// Runs the closed loop for cfg.steps() steps. Throws NumericalAbort on a
// non-finite state or a speed below the model floor.
RunResult simulate(const ScenarioConfig& cfg, const RunHooks& hooks = {});

}  // namespace sharedctl
