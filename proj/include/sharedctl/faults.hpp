#pragma once

#include "sharedctl/vehicle.hpp"

namespace sharedctl {

enum class FaultChannel { Steering, Acceleration };

// Additive ramp-to-plateau degradation on one actuator channel, indexed by
// control step. Offset is 0 for k < onset, plateau * (k - onset) / ramp
// while ramping, plateau afterwards.
struct FaultProfile {
  FaultChannel channel = FaultChannel::Steering;
  int onset = 0;
  int ramp = 0;
  double plateau = 0.0;
  // Multiplicative degradation of the faulted channel, applied before the offset.
  double scale = 1.0;

  static FaultProfile none() { return {}; }
  double offset(int k) const;
  void validate() const;
};

// Degraded automation output for step k, clipped to the actuator range.
ControlVector inject(ControlVector u_des, int k, const FaultProfile& profile, const ActuatorBounds& bounds);

}  // namespace sharedctl
