#pragma once

#include <span>
#include <vector>

#include "sharedctl/box_qn.hpp"
#include "sharedctl/risk.hpp"
#include "sharedctl/road.hpp"
#include "sharedctl/safe_area.hpp"
#include "sharedctl/vehicle.hpp"

namespace sharedctl {

struct MpcWeights {
  double potential = 1.0;   // R, automation only
  double lateral = 5.0;     // W
  double speed = 1.0;       // H
  double yaw_accel = 0.1;   // N
  double accel = 0.1;       // Q, acceleration component
  double steer = 10.0;      // Q, steering component
  double corridor = 1e3;    // rho, driver only: soft corridor membership
};

struct MpcConfig {
  int hp = 10;
  int hc = 3;
  double dt = 0.05;
  MpcWeights weights;
  ActuatorBounds bounds;
  SolverSettings solver;

  void validate() const;
};

// Lateral target in the road frame and target speed.
struct Reference {
  double n_target = 0.0;
  double v_target = 0.0;
};

enum class MpcObjective {
  Automation,  // potential-field term over the corridor
  Driver,      // soft corridor-membership penalty, no potential field
};

struct MpcSolution {
  ControlVector first;
  std::vector<ControlVector> sequence;  // hc controls
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

// Finite-horizon tracking controller: single shooting over hc free controls,
// held constant from hc to hp, RK4 internal model identical to the plant.
class MpcController {
 public:
  MpcController(MpcObjective objective, MpcConfig cfg, VehicleParams vehicle, ApfParams apf);

  // Warm-starts from the previous shifted solution, or from `prev_u`
  // repeated when there is none.
  MpcSolution solve(const VehicleState& state, const Reference& ref, const RoadModel& road, const SafeArea& area,
                    ControlVector prev_u);

  // Same optimization from an explicit initial control sequence.
  MpcSolution solve_from(const VehicleState& state, const Reference& ref, const RoadModel& road,
                         const SafeArea& area, std::span<const ControlVector> initial) const;

  // Objective of a control sequence (hc entries). Infeasible rollouts
  // (speed below the model floor) cost kInfeasibleCost.
  double cost(const VehicleState& state, const Reference& ref, const RoadModel& road, const SafeArea& area,
              std::span<const ControlVector> seq) const;

  // Predicted road-frame positions for a control sequence.
  std::vector<RoadPoint> rollout(const VehicleState& state, const RoadModel& road,
                                 std::span<const ControlVector> seq, double s_hint) const;

  void reset() { warm_.clear(); }
  const MpcConfig& config() const { return cfg_; }
  MpcObjective objective() const { return objective_; }

  static constexpr double kInfeasibleCost = 1e12;

 private:
  MpcObjective objective_;
  MpcConfig cfg_;
  VehicleParams vehicle_;
  ApfParams apf_;
  std::vector<ControlVector> warm_;
};

struct DriverParams {
  double k_h = 1.08;  // proportional gain
  double t_h = 0.17;  // lag time constant [s]

  void validate() const;
};

// Zero-order-hold discretization of K_h / (T_h s + 1), per component:
// out = a * prev + (1 - a) * K_h * error, a = exp(-dt / T_h).
ControlVector driver_lag_step(ControlVector prev_output, ControlVector error, const DriverParams& p, double dt);

}  // namespace sharedctl
