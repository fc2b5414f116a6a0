#include "sharedctl/prediction.hpp"

#include <cmath>

#include "sharedctl/errors.hpp"

namespace sharedctl {

void PredictionConfig::validate() const {
  if (!(horizon > 0.0)) throw ConfigError("prediction: horizon must be positive");
  if (!(yaw_rate_eps > 0.0)) throw ConfigError("prediction: yaw_rate_eps must be positive");
}

CtraState seed_from_degraded_control(const VehicleState& state, ControlVector u_f,
                                     const VehicleParams& params, double dt) {
  const VehicleState next = step(state, u_f, params, dt);
  return {next.x, next.y, next.psi, next.vx, u_f.a, next.r};
}

CtraState ctra_predict(const CtraState& seed, double psi_road, const PredictionConfig& cfg) {
  const double tau = cfg.horizon;
  const double v = seed.v;
  const double a = seed.a;
  const double r = seed.r;
  const double psi0 = seed.psi - psi_road;
  const double psi1 = psi0 + tau * r;

  double dx = 0.0;
  double dy = 0.0;
  if (std::abs(r) < cfg.yaw_rate_eps) {
    const double dist = v * tau + 0.5 * a * tau * tau;
    dx = dist * std::cos(psi0);
    dy = dist * std::sin(psi0);
  } else {
    const double inv_r2 = 1.0 / (r * r);
    dx = inv_r2 * ((v * r + a * r * tau) * std::sin(psi1) + a * std::cos(psi1) - v * r * std::sin(psi0) -
                   a * std::cos(psi0));
    dy = inv_r2 * ((-v * r - a * r * tau) * std::cos(psi1) + a * std::sin(psi1) + v * r * std::cos(psi0) -
                   a * std::sin(psi0));
  }
  return {seed.x + dx, seed.y + dy, psi1, v + a * tau, a, r};
}

CtraState predict_neighbor(const CtraState& neighbor, const PredictionConfig& cfg) {
  return ctra_predict(neighbor, 0.0, cfg);
}

}  // namespace sharedctl
