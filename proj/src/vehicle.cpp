#include "sharedctl/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sharedctl/errors.hpp"

namespace sharedctl {

bool VehicleState::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(psi) && std::isfinite(vx) &&
         std::isfinite(vy) && std::isfinite(r);
}

void VehicleParams::validate() const {
  if (!(lf > 0 && lr > 0 && mass > 0 && iz > 0 && c_alpha_f > 0 && c_alpha_r > 0 && width > 0 &&
        length > 0 && vx_floor > 0)) {
    throw ConfigError("vehicle: all parameters must be positive");
  }
}

ControlVector ActuatorBounds::clip(ControlVector u) const {
  return {std::clamp(u.a, min.a, max.a), std::clamp(u.delta, min.delta, max.delta)};
}

bool ActuatorBounds::contains(ControlVector u) const {
  return u.a >= min.a && u.a <= max.a && u.delta >= min.delta && u.delta <= max.delta;
}

TireForces tire_forces(const VehicleState& s, double delta, const VehicleParams& p) {
  const double alpha_f = (s.vy + p.lf * s.r) / s.vx - delta;
  const double alpha_r = (s.vy - p.lr * s.r) / s.vx;
  return {-p.c_alpha_f * alpha_f, -p.c_alpha_r * alpha_r};
}

StateDerivative derivatives(const VehicleState& s, ControlVector u, const VehicleParams& p) {
  if (!s.finite() || !std::isfinite(u.a) || !std::isfinite(u.delta)) {
    throw DomainError("dynamics: non-finite state or control");
  }
  if (s.vx < p.vx_floor) {
    throw DomainError("dynamics: v_x = " + std::to_string(s.vx) + " below floor " +
                      std::to_string(p.vx_floor));
  }
  const TireForces f = tire_forces(s, u.delta, p);
  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  StateDerivative d;
  d.x_dot = s.vx * c - s.vy * sn;
  d.y_dot = s.vx * sn + s.vy * c;
  d.psi_dot = s.r;
  d.vx_dot = s.r * s.vy + u.a;
  d.vy_dot = -s.r * s.vx + 2.0 / p.mass * (f.front * std::cos(u.delta) + f.rear);
  d.r_dot = 2.0 / p.iz * (p.lf * f.front - p.lr * f.rear);
  return d;
}

namespace {

VehicleState advance(const VehicleState& s, const StateDerivative& d, double h) {
  return {s.x + h * d.x_dot,   s.y + h * d.y_dot,   s.psi + h * d.psi_dot,
          s.vx + h * d.vx_dot, s.vy + h * d.vy_dot, s.r + h * d.r_dot};
}

}  // namespace

VehicleState step(const VehicleState& s, ControlVector u, const VehicleParams& p, double dt) {
  if (!(dt > 0.0)) throw DomainError("dynamics: dt must be positive");
  const StateDerivative k1 = derivatives(s, u, p);
  const StateDerivative k2 = derivatives(advance(s, k1, 0.5 * dt), u, p);
  const StateDerivative k3 = derivatives(advance(s, k2, 0.5 * dt), u, p);
  const StateDerivative k4 = derivatives(advance(s, k3, dt), u, p);
  const double w = dt / 6.0;
  return {s.x + w * (k1.x_dot + 2 * k2.x_dot + 2 * k3.x_dot + k4.x_dot),
          s.y + w * (k1.y_dot + 2 * k2.y_dot + 2 * k3.y_dot + k4.y_dot),
          s.psi + w * (k1.psi_dot + 2 * k2.psi_dot + 2 * k3.psi_dot + k4.psi_dot),
          s.vx + w * (k1.vx_dot + 2 * k2.vx_dot + 2 * k3.vx_dot + k4.vx_dot),
          s.vy + w * (k1.vy_dot + 2 * k2.vy_dot + 2 * k3.vy_dot + k4.vy_dot),
          s.r + w * (k1.r_dot + 2 * k2.r_dot + 2 * k3.r_dot + k4.r_dot)};
}

}  // namespace sharedctl
