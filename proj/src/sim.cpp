#include "sharedctl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sharedctl/errors.hpp"

namespace sharedctl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double clamp_station(const RoadModel& road, double s) { return std::clamp(s, 0.0, road.length()); }

Rect footprint(double s, double n, const VehicleParams& v) { return Rect{{s, n}, v.length, v.width}; }

// Largest distance by which the ego body (center and four corners, rotated
// by the heading relative to the road) lies outside the corridor.
double footprint_violation(const SafeArea& area, const RoadModel& road, RoadPoint ego, double psi,
                           const VehicleParams& vp) {
  const double phi = psi - road.heading(clamp_station(road, ego.s));
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  double worst = corridor_violation(area, {ego.s, ego.n});
  for (const double lx : {-0.5 * vp.length, 0.5 * vp.length}) {
    for (const double ly : {-0.5 * vp.width, 0.5 * vp.width}) {
      worst = std::max(worst, corridor_violation(area, {ego.s + c * lx - s * ly, ego.n + s * lx + c * ly}));
    }
  }
  return worst;
}

bool record_finite(const TraceRecord& r) {
  const double vals[] = {r.ego_road.s, r.ego_road.n, r.u_a_des.a, r.u_a_des.delta, r.u_h_des.a, r.u_h_des.delta,
                         r.u.a, r.u.delta, r.r_y, r.r_x, r.alpha};
  return r.ego.finite() && std::all_of(std::begin(vals), std::end(vals), [](double v) { return std::isfinite(v); });
}

void fold(Summary& s, const TraceRecord& r, double n_target, const VehicleParams& vp) {
  if (std::isfinite(r.gap_preceding)) {
    s.min_gap_preceding =
        std::isfinite(s.min_gap_preceding) ? std::min(s.min_gap_preceding, r.gap_preceding) : r.gap_preceding;
  }
  s.max_lateral_deviation = std::max(s.max_lateral_deviation, std::abs(r.ego_road.n - n_target));
  s.max_corridor_violation = std::max(s.max_corridor_violation, r.corridor_violation);
  s.max_r_y = std::max(s.max_r_y, r.r_y);
  s.max_r_x = std::max(s.max_r_x, r.r_x);
  s.min_alpha = std::min(s.min_alpha, r.alpha);
  s.max_alpha = s.steps == 0 ? r.alpha : std::max(s.max_alpha, r.alpha);
  if (!r.automation_converged) ++s.automation_nonconverged;
  if (!r.driver_converged) ++s.driver_nonconverged;
  if (r.corridor_fallback) ++s.corridor_fallbacks;
  const Rect ego = footprint(r.ego_road.s, r.ego_road.n, vp);
  for (const auto& nb : r.neighbors) {
    if (nb && ego.overlaps(footprint(nb->s, nb->n, vp))) s.collision = true;
  }
  if (std::isfinite(r.gap_preceding) && r.gap_preceding < 0.0) s.collision = true;
  ++s.steps;
}

}  // namespace

VehicleState initial_ego_state(const ScenarioConfig& cfg, const RoadModel& road) {
  const RoadPoint rp{cfg.ego.station, road.lane_offset(cfg.ego.lane)};
  const Point2 w = road.to_world(rp);
  VehicleState x;
  x.x = w.x;
  x.y = w.y;
  x.psi = road.heading(rp.s);
  x.vx = cfg.ego.speed;
  // Steady yaw rate on the curve so the run does not open with a transient.
  if (road.kind() == RoadModel::Kind::ConstantRadiusCurve) x.r = cfg.ego.speed / road.station_rate(rp.n) / road.radius();
  return x;
}

std::array<std::optional<NeighborState>, 3> neighbors_at(const ScenarioConfig& cfg, const RoadModel& road,
                                                         double t) {
  std::array<std::optional<NeighborState>, 3> out{};
  for (const NeighborSpec& spec : cfg.neighbors) {
    NeighborState n;
    n.role = spec.role;
    n.lane = spec.lane;
    n.n = road.lane_offset(spec.lane);
    n.v = spec.speed;
    const double s0 = spec.role == NeighborRole::Follower ? cfg.ego.station - spec.gap : cfg.ego.station + spec.gap;
    n.s = s0 + spec.speed * road.station_rate(n.n) * t;
    out[static_cast<int>(spec.role)] = n;
  }
  return out;
}

RunResult simulate(const ScenarioConfig& cfg, const RunHooks& hooks) {
  cfg.validate();
  const RoadModel road = cfg.make_road();
  const VehicleParams& vp = cfg.vehicle;
  const double dt = cfg.dt;
  const double n_target = road.lane_offset(cfg.reference.lane);
  const bool shared = cfg.mode == Mode::Shared;

  MpcController automation(MpcObjective::Automation, cfg.mpc, vp, cfg.apf);
  MpcController driver(MpcObjective::Driver, cfg.mpc, vp, cfg.apf);

  RunResult result;
  Summary& sum = result.summary;
  sum.name = cfg.name;
  sum.mode = cfg.mode;
  sum.duration = cfg.duration;
  sum.min_gap_preceding = kNaN;

  VehicleState x = initial_ego_state(cfg, road);
  double s_hint = cfg.ego.station;
  ControlVector u_a_prev{};
  ControlVector u_h_prev_des{};
  ControlVector u_h_out{};
  std::optional<SafeArea> last_area;

  auto abort = [&](const std::string& why) {
    sum.aborted = true;
    sum.abort_reason = why;
    throw NumericalAbort(why, result);
  };

  const int steps = cfg.steps();
  result.trace.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    TraceRecord rec;
    rec.k = k;
    rec.t = k * dt;
    rec.ego = x;
    rec.ego_road = road.to_road({x.x, x.y}, s_hint);
    s_hint = rec.ego_road.s;
    rec.neighbors = neighbors_at(cfg, road, rec.t);

    // 1. Corridor from the current snapshot.
    CorridorRequest req;
    req.ego = rec.ego_road;
    req.target_lane = cfg.reference.lane;
    for (const auto& nb : rec.neighbors) {
      if (!nb) continue;
      req.obstacles.push_back({footprint(nb->s, nb->n, vp), nb->v});
      if (nb->role == NeighborRole::Preceding) req.preceding = footprint(nb->s, nb->n, vp);
    }
    try {
      last_area = build_corridor(road, req, cfg.corridor);
    } catch (const GeometryError& e) {
      if (!last_area) abort(std::string("no corridor at step 0: ") + e.what());
      rec.corridor_fallback = true;
    }
    const SafeArea& area = *last_area;
    if (hooks.on_corridor) hooks.on_corridor(k, area);
    rec.corridor_violation = footprint_violation(area, road, rec.ego_road, x.psi, vp);

    Reference ref;
    ref.n_target = n_target;
    ref.v_target = cfg.ego.speed;
    if (cfg.reference.speed) {
      ref.v_target = *cfg.reference.speed;
    } else if (const auto& p = rec.neighbors[static_cast<int>(NeighborRole::Preceding)]) {
      ref.v_target = p->v;
    }

    // 2. Automation plan, then degradation.
    const MpcSolution sa = automation.solve(x, ref, road, area, u_a_prev);
    rec.u_a_des = sa.first;
    rec.automation_converged = sa.converged;
    u_a_prev = sa.first;
    rec.u_a_f = inject(rec.u_a_des, k, cfg.fault, cfg.mpc.bounds);

    // 3. Risk at the predicted position.
    try {
      const CtraState seed = seed_from_degraded_control(x, rec.u_a_f, vp, dt);
      const RoadPoint seed_rp = road.to_road({seed.x, seed.y}, s_hint);
      const double psi_road = road.heading(clamp_station(road, seed_rp.s));
      CtraState local = seed;
      local.x = 0.0;
      local.y = 0.0;
      const CtraState d = ctra_predict(local, psi_road, cfg.prediction);
      const double c = std::cos(psi_road);
      const double s = std::sin(psi_road);
      const Point2 world{seed.x + c * d.x - s * d.y, seed.y + s * d.x + c * d.y};
      rec.predicted = road.to_road(world, seed_rp.s);

      const LateralRisk lat = lateral_risk(area, {rec.predicted.s, rec.predicted.n}, cfg.apf);
      std::array<std::optional<LongitudinalKinematics>, 3> others{};
      for (const auto& nb : rec.neighbors) {
        if (!nb) continue;
        const CtraState now{nb->s, nb->n, 0.0, nb->v * road.station_rate(nb->n), 0.0, 0.0};
        others[static_cast<int>(nb->role)] = LongitudinalKinematics{predict_neighbor(now, cfg.prediction).x, nb->v};
      }
      const LongitudinalRisk lon =
          longitudinal_risk({rec.predicted.s, d.v}, others, cfg.task_weights(), cfg.dpf);
      rec.r_y = lat.r_y;
      rec.r_x = lon.r_x;
    } catch (const DomainError& e) {
      abort(std::string("prediction left the model domain: ") + e.what());
    }
    rec.alpha = fis_alpha(rec.r_y, rec.r_x, cfg.fuzzy_sets, cfg.rules);

    // 4. Authority allocation and the driver.
    if (shared) {
      const Allocation al = allocate(rec.u_a_des, rec.u_a_f, rec.alpha, cfg.allocation);
      rec.u_a_act = al.u_act;
      rec.branch = {static_cast<int>(al.components[0].branch), static_cast<int>(al.components[1].branch)};
      const MpcSolution sh = driver.solve(x, ref, road, area, u_h_prev_des);
      rec.u_h_des = sh.first;
      rec.driver_converged = sh.converged;
      u_h_prev_des = sh.first;
      u_h_out = driver_lag_step(u_h_out, rec.u_h_des - rec.u_a_act, cfg.driver, dt);
      rec.u_h_act = u_h_out;
    } else {
      rec.u_a_act = rec.u_a_f;
      rec.branch = {2, 2};
    }
    rec.u = rec.u_a_act + rec.u_h_act;

    const auto& pre = rec.neighbors[static_cast<int>(NeighborRole::Preceding)];
    rec.gap_preceding = pre ? pre->s - rec.ego_road.s - vp.length : kNaN;

    if (!record_finite(rec)) {
      result.trace.push_back(rec);
      abort("non-finite value at step " + std::to_string(k));
    }
    result.trace.push_back(rec);
    fold(sum, rec, n_target, vp);

    try {
      x = step(x, rec.u, vp, dt);
    } catch (const DomainError& e) {
      abort(std::string("plant left the model domain: ") + e.what());
    }
    if (!x.finite()) abort("non-finite plant state after step " + std::to_string(k));
  }
  if (steps == 0) {
    const auto nbs = neighbors_at(cfg, road, 0.0);
    if (const auto& p = nbs[static_cast<int>(NeighborRole::Preceding)]) {
      sum.min_gap_preceding = p->s - cfg.ego.station - vp.length;
    }
  }
  return result;
}

}  // namespace sharedctl
