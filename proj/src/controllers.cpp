#include "sharedctl/controllers.hpp"

#include <cmath>

#include "sharedctl/errors.hpp"

namespace sharedctl {

void MpcConfig::validate() const {
  if (hc < 1 || hp < hc) throw ConfigError("mpc: need 1 <= hc <= hp");
  if (!(dt > 0.0)) throw ConfigError("mpc: dt must be positive");
  const MpcWeights& w = weights;
  if (!(w.potential >= 0 && w.lateral >= 0 && w.speed >= 0 && w.yaw_accel >= 0 && w.accel >= 0 && w.steer >= 0 &&
        w.corridor >= 0)) {
    throw ConfigError("mpc: weights must be non-negative");
  }
  if (!(bounds.min.a < bounds.max.a && bounds.min.delta < bounds.max.delta)) {
    throw ConfigError("mpc: actuator bounds must satisfy min < max");
  }
  solver.validate();
}

void DriverParams::validate() const {
  if (!(k_h > 0.0 && t_h > 0.0)) throw ConfigError("driver: k_h and t_h must be positive");
}

MpcController::MpcController(MpcObjective objective, MpcConfig cfg, VehicleParams vehicle, ApfParams apf)
    : objective_(objective), cfg_(cfg), vehicle_(vehicle), apf_(apf) {
  cfg_.validate();
}

std::vector<RoadPoint> MpcController::rollout(const VehicleState& state, const RoadModel& road,
                                              std::span<const ControlVector> seq, double s_hint) const {
  std::vector<RoadPoint> pts;
  pts.reserve(cfg_.hp);
  VehicleState x = state;
  double hint = s_hint;
  for (int i = 0; i < cfg_.hp; ++i) {
    const ControlVector u = seq[std::min<std::size_t>(i, seq.size() - 1)];
    x = step(x, u, vehicle_, cfg_.dt);
    const RoadPoint rp = road.to_road({x.x, x.y}, hint);
    hint = rp.s;
    pts.push_back(rp);
  }
  return pts;
}

double MpcController::cost(const VehicleState& state, const Reference& ref, const RoadModel& road,
                           const SafeArea& area, std::span<const ControlVector> seq) const {
  const MpcWeights& w = cfg_.weights;
  double j = 0.0;
  VehicleState x = state;
  // The corridor is built around the ego station; it anchors the curve unwrap.
  double hint = area.start.x;
  double r_prev = state.r;
  try {
    for (int i = 0; i < cfg_.hp; ++i) {
      const ControlVector u = seq[std::min<std::size_t>(i, seq.size() - 1)];
      x = step(x, u, vehicle_, cfg_.dt);
      const RoadPoint rp = road.to_road({x.x, x.y}, hint);
      hint = rp.s;
      const Point2 p{rp.s, rp.n};
      if (objective_ == MpcObjective::Automation) {
        const double pr = boundary_potential(distance_to_boundaries(area, p), apf_);
        j += w.potential * pr * pr;
      } else {
        const double viol = corridor_violation(area, p);
        j += w.corridor * viol * viol;
      }
      const double e_lat = rp.n - ref.n_target;
      const double e_v = x.vx - ref.v_target;
      const double r_dot = (x.r - r_prev) / cfg_.dt;
      r_prev = x.r;
      j += w.lateral * e_lat * e_lat + w.speed * e_v * e_v + w.yaw_accel * r_dot * r_dot;
    }
  } catch (const DomainError&) {
    return kInfeasibleCost;
  }
  for (int i = 0; i < cfg_.hc; ++i) {
    const ControlVector u = seq[std::min<std::size_t>(i, seq.size() - 1)];
    j += w.accel * u.a * u.a + w.steer * u.delta * u.delta;
  }
  return std::isfinite(j) ? j : kInfeasibleCost;
}

MpcSolution MpcController::solve_from(const VehicleState& state, const Reference& ref, const RoadModel& road,
                                      const SafeArea& area, std::span<const ControlVector> initial) const {
  const int hc = cfg_.hc;
  const ActuatorBounds& b = cfg_.bounds;
  // Decision variables normalized to [-1, 1] per component.
  const double mid_a = 0.5 * (b.max.a + b.min.a);
  const double half_a = 0.5 * (b.max.a - b.min.a);
  const double mid_d = 0.5 * (b.max.delta + b.min.delta);
  const double half_d = 0.5 * (b.max.delta - b.min.delta);

  auto decode = [&](const std::vector<double>& z) {
    std::vector<ControlVector> seq(hc);
    for (int i = 0; i < hc; ++i) seq[i] = {mid_a + half_a * z[2 * i], mid_d + half_d * z[2 * i + 1]};
    return seq;
  };
  std::vector<double> z0(2 * hc);
  for (int i = 0; i < hc; ++i) {
    const ControlVector u = b.clip(initial[std::min<std::size_t>(i, initial.size() - 1)]);
    z0[2 * i] = (u.a - mid_a) / half_a;
    z0[2 * i + 1] = (u.delta - mid_d) / half_d;
  }
  const std::vector<double> lo(2 * hc, -1.0);
  const std::vector<double> hi(2 * hc, 1.0);
  auto objective = [&](const std::vector<double>& z) { return cost(state, ref, road, area, decode(z)); };

  SolveResult r = minimize_box(objective, z0, lo, hi, cfg_.solver);
  MpcSolution sol;
  sol.sequence = decode(r.x);
  for (ControlVector& u : sol.sequence) u = b.clip(u);
  sol.first = sol.sequence.front();
  sol.cost = r.value;
  sol.iterations = r.iterations;
  sol.converged = r.converged;
  sol.history = std::move(r.history);
  return sol;
}

MpcSolution MpcController::solve(const VehicleState& state, const Reference& ref, const RoadModel& road,
                                 const SafeArea& area, ControlVector prev_u) {
  std::vector<ControlVector> init;
  if (warm_.empty()) {
    init.assign(cfg_.hc, prev_u);
  } else {
    for (int i = 0; i < cfg_.hc; ++i) init.push_back(warm_[std::min<std::size_t>(i + 1, warm_.size() - 1)]);
  }
  MpcSolution sol = solve_from(state, ref, road, area, init);
  warm_ = sol.sequence;
  return sol;
}

ControlVector driver_lag_step(ControlVector prev_output, ControlVector error, const DriverParams& p, double dt) {
  const double a = std::exp(-dt / p.t_h);
  ControlVector out;
  for (int i = 0; i < 2; ++i) out[i] = a * prev_output[i] + (1.0 - a) * p.k_h * error[i];
  return out;
}

}  // namespace sharedctl
