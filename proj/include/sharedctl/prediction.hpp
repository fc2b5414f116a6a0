#pragma once

#include "sharedctl/vehicle.hpp"

namespace sharedctl {

// Constant turn rate and acceleration state: position, heading, speed,
// acceleration, yaw rate.
struct CtraState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double v = 0.0;
  double a = 0.0;
  double r = 0.0;
};

struct PredictionConfig {
  double horizon = 0.5;         // tau_p [s]
  double yaw_rate_eps = 1e-4;   // below this |r| the straight-line limit is used

  void validate() const;
};

// Advances the bicycle model one dt under the degraded control and pairs the
// resulting pose, speed and yaw rate with the degraded acceleration.
CtraState seed_from_degraded_control(const VehicleState& state, ControlVector u_f,
                                     const VehicleParams& params, double dt);

// Closed-form CTRA propagation over cfg.horizon. The displacement is
// expressed in the frame aligned with the road heading `psi_road`; the
// returned heading is road-relative (psi - psi_road + tau * r).
CtraState ctra_predict(const CtraState& seed, double psi_road, const PredictionConfig& cfg);

// Surrounding vehicles are described directly in the road frame.
CtraState predict_neighbor(const CtraState& neighbor, const PredictionConfig& cfg);

}  // namespace sharedctl
