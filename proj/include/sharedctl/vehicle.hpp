#pragma once

#include <array>
#include <numbers>

namespace sharedctl {

// Planar vehicle state; positions in world coordinates, velocities in the body frame.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double r = 0.0;

  bool finite() const;
};

struct StateDerivative {
  double x_dot = 0.0;
  double y_dot = 0.0;
  double psi_dot = 0.0;
  double vx_dot = 0.0;
  double vy_dot = 0.0;
  double r_dot = 0.0;
};

struct VehicleParams {
  double lf = 1.21;
  double lr = 1.05;
  double mass = 2000.0;
  double iz = 1300.0;
  double c_alpha_f = 80000.0;
  double c_alpha_r = 80000.0;
  double width = 2.0;
  double length = 4.5;
  // Slip angles divide by v_x; below this speed the model is rejected.
  double vx_floor = 0.5;

  void validate() const;
};

// Longitudinal acceleration and front steering angle.
struct ControlVector {
  double a = 0.0;
  double delta = 0.0;

  double& operator[](int i) { return i == 0 ? a : delta; }
  double operator[](int i) const { return i == 0 ? a : delta; }

  friend ControlVector operator+(ControlVector u, ControlVector v) { return {u.a + v.a, u.delta + v.delta}; }
  friend ControlVector operator-(ControlVector u, ControlVector v) { return {u.a - v.a, u.delta - v.delta}; }
  friend bool operator==(const ControlVector&, const ControlVector&) = default;
};

struct ActuatorBounds {
  ControlVector min{-5.0, -30.0 * std::numbers::pi / 180.0};
  ControlVector max{5.0, 30.0 * std::numbers::pi / 180.0};

  ControlVector clip(ControlVector u) const;
  bool contains(ControlVector u) const;
};

struct TireForces {
  double front = 0.0;
  double rear = 0.0;
};

// Linear lateral tire forces F = -C * slip for the current state and steering.
TireForces tire_forces(const VehicleState& s, double delta, const VehicleParams& p);

// Right-hand side of the 3-DOF dynamic bicycle model. Throws DomainError when
// v_x is below the configured floor or the state is not finite.
StateDerivative derivatives(const VehicleState& s, ControlVector u, const VehicleParams& p);

// One classical RK4 step with u held constant over dt.
VehicleState step(const VehicleState& s, ControlVector u, const VehicleParams& p, double dt);

}  // namespace sharedctl
