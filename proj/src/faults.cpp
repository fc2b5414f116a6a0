#include "sharedctl/faults.hpp"

#include <algorithm>
#include <cmath>

#include "sharedctl/errors.hpp"

namespace sharedctl {

double FaultProfile::offset(int k) const {
  if (k < onset) return 0.0;
  if (ramp <= 0) return plateau;
  const double progress = std::min(1.0, static_cast<double>(k - onset) / ramp);
  return plateau * progress;
}

void FaultProfile::validate() const {
  if (onset < 0) throw ConfigError("fault: onset must be >= 0");
  if (ramp < 0) throw ConfigError("fault: ramp must be >= 0");
  if (!std::isfinite(plateau) || !std::isfinite(scale)) throw ConfigError("fault: plateau and scale must be finite");
}

ControlVector inject(ControlVector u_des, int k, const FaultProfile& profile, const ActuatorBounds& bounds) {
  ControlVector u = u_des;
  const int ch = profile.channel == FaultChannel::Acceleration ? 0 : 1;
  if (k >= profile.onset) u[ch] = profile.scale * u[ch];
  u[ch] += profile.offset(k);
  return bounds.clip(u);
}

}  // namespace sharedctl
