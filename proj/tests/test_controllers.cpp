#include <cmath>

#include "doctest.h"
#include "sharedctl/controllers.hpp"
#include "sharedctl/errors.hpp"
#include "sharedctl/sim.hpp"

using namespace sharedctl;

namespace {

const RoadModel kRoad = RoadModel::straight(3.75, 2, 1000);
constexpr double kLane0 = 1.875;

SafeArea open_corridor(double s) {
  CorridorRequest req;
  req.ego = {s, kLane0};
  return build_corridor(kRoad, req, {});
}

SafeArea case1_corridor() {
  CorridorRequest req;
  req.ego = {0.0, kLane0};
  req.obstacles = {{Rect{{38, kLane0}, 4.5, 2}, 12}, {Rect{{30, 5.625}, 4.5, 2}, 15}, {Rect{{-5, 5.625}, 4.5, 2}, 12}};
  req.preceding = req.obstacles[0].footprint;
  return build_corridor(kRoad, req, {});
}

VehicleState on_lane(double s, double v) {
  VehicleState x;
  x.x = s;
  x.y = kLane0;
  x.vx = v;
  return x;
}

MpcController make(MpcObjective o, MpcConfig cfg = {}) { return MpcController(o, cfg, VehicleParams{}, ApfParams{}); }

}  // namespace

TEST_CASE("on-target state yields near-zero controls") {
  const SafeArea area = open_corridor(0.0);
  for (MpcObjective o : {MpcObjective::Automation, MpcObjective::Driver}) {
    MpcController c = make(o);
    const MpcSolution s = c.solve(on_lane(0, 15), {kLane0, 15}, kRoad, area, {});
    CHECK(std::hypot(s.first.a, s.first.delta) < 1e-3);
  }
}

TEST_CASE("outputs respect box bounds") {
  const SafeArea area = open_corridor(0.0);
  MpcController c = make(MpcObjective::Automation);
  const MpcSolution s = c.solve(on_lane(0, 15), {5.0, 40}, kRoad, area, {});
  const ActuatorBounds b;
  for (const ControlVector& u : s.sequence) CHECK(b.contains(u));
  CHECK(s.first.a == 5.0);
}

TEST_CASE("solution beats a 9x9 constant-control grid") {
  MpcConfig cfg;
  cfg.hp = 3;
  cfg.hc = 3;
  const SafeArea area = open_corridor(0.0);
  for (MpcObjective o : {MpcObjective::Automation, MpcObjective::Driver}) {
    MpcController c = make(o, cfg);
    VehicleState x = on_lane(0, 14);
    x.y = 1.2;
    x.psi = 0.03;
    const Reference ref{kLane0, 15};
    const MpcSolution s = c.solve(x, ref, kRoad, area, {});
    const ActuatorBounds b;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) {
        const ControlVector u{b.min.a + i * (b.max.a - b.min.a) / 8, b.min.delta + j * (b.max.delta - b.min.delta) / 8};
        const std::vector<ControlVector> seq(3, u);
        best = std::min(best, c.cost(x, ref, kRoad, area, seq));
      }
    }
    CHECK(s.cost <= best);
    CHECK(s.cost == doctest::Approx(c.cost(x, ref, kRoad, area, s.sequence)).epsilon(1e-12));
  }
}

TEST_CASE("solver history is non-increasing and runs are deterministic") {
  const SafeArea area = case1_corridor();
  VehicleState x = on_lane(0, 15);
  x.y = 1.0;
  MpcController a = make(MpcObjective::Automation);
  MpcController b = make(MpcObjective::Automation);
  const MpcSolution sa = a.solve(x, {kLane0, 12}, kRoad, area, {});
  const MpcSolution sb = b.solve(x, {kLane0, 12}, kRoad, area, {});
  CHECK(sa.first == sb.first);
  CHECK(sa.cost == sb.cost);
  for (std::size_t i = 1; i < sa.history.size(); ++i) CHECK(sa.history[i] <= sa.history[i - 1]);
}

TEST_CASE("driver rollout stays in the Case 1 corridor") {
  const SafeArea area = case1_corridor();
  MpcController c = make(MpcObjective::Driver);
  const VehicleState x = on_lane(0, 15);
  const MpcSolution s = c.solve(x, {kLane0, 12}, kRoad, area, {});
  for (const RoadPoint& p : c.rollout(x, kRoad, s.sequence, 0.0)) CHECK(corridor_violation(area, {p.s, p.n}) == 0.0);
}

TEST_CASE("driver and automation agree far from the boundaries") {
  const SafeArea area = open_corridor(0.0);
  VehicleState x = on_lane(0, 14.5);
  x.y = kLane0 + 0.05;
  MpcController a = make(MpcObjective::Automation);
  MpcController d = make(MpcObjective::Driver);
  const MpcSolution ua = a.solve(x, {kLane0, 15}, kRoad, area, {});
  const MpcSolution ud = d.solve(x, {kLane0, 15}, kRoad, area, {});
  CHECK(std::abs(ua.first.a - ud.first.a) < 0.05);
  CHECK(std::abs(ua.first.delta - ud.first.delta) < 0.05);
}

TEST_CASE("warm start is no worse than a cold start on the Case 1 trace") {
  ScenarioConfig cfg = load_scenario(std::string(SHAREDCTL_SCENARIO_DIR) + "/case1.scenario");
  std::vector<SafeArea> areas;
  RunHooks hooks;
  hooks.on_corridor = [&](int, const SafeArea& a) { areas.push_back(a); };
  const RunResult run = simulate(cfg, hooks);
  REQUIRE(areas.size() == run.trace.size());

  const RoadModel road = cfg.make_road();
  MpcController warm(MpcObjective::Automation, cfg.mpc, cfg.vehicle, cfg.apf);
  const MpcController cold(MpcObjective::Automation, cfg.mpc, cfg.vehicle, cfg.apf);
  const std::vector<ControlVector> zero(cfg.mpc.hc, ControlVector{});
  ControlVector prev{};
  int worse = 0;
  for (std::size_t k = 0; k < run.trace.size(); ++k) {
    const TraceRecord& rec = run.trace[k];
    const Reference ref{road.lane_offset(cfg.reference.lane), rec.neighbors[2]->v};
    const MpcSolution w = warm.solve(rec.ego, ref, road, areas[k], prev);
    prev = w.first;
    CHECK(w.first == rec.u_a_des);
    const MpcSolution c = cold.solve_from(rec.ego, ref, road, areas[k], zero);
    if (w.cost > c.cost + 1e-9 * (1 + std::abs(c.cost))) {
      ++worse;
      MESSAGE("k=" << k << " warm " << w.cost << " cold " << c.cost);
    }
  }
  CHECK(worse == 0);
}

TEST_CASE("driver lag") {
  const DriverParams avg;
  CHECK(avg.k_h == 1.08);
  CHECK(avg.t_h == 0.17);
  const ControlVector first = driver_lag_step({}, {1.0, 1.0}, avg, 0.05);
  CHECK(std::abs(first.a - 0.27519607762544107) < 1e-15);
  CHECK(first.delta == first.a);

  ControlVector u{};
  for (int k = 1; k <= 200; ++k) {
    u = driver_lag_step(u, {1.0, -0.5}, avg, 0.05);
    const double t = k * 0.05;
    CHECK(std::abs(u.a - avg.k_h * (1 - std::exp(-t / avg.t_h))) < 1e-12);
    CHECK(std::abs(u.delta + 0.5 * avg.k_h * (1 - std::exp(-t / avg.t_h))) < 1e-12);
  }
  CHECK(u.a == doctest::Approx(1.08).epsilon(1e-12));

  const double decay = std::exp(-0.05 / avg.t_h);
  ControlVector v{0.4, 0.1};
  for (int k = 0; k < 10; ++k) {
    const ControlVector next = driver_lag_step(v, {}, avg, 0.05);
    CHECK(next.a == doctest::Approx(decay * v.a).epsilon(1e-15));
    v = next;
  }
}

TEST_CASE("config validation") {
  MpcConfig cfg;
  cfg.hc = 11;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.weights.lateral = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  DriverParams d{0.0, 0.2};
  CHECK_THROWS_AS(d.validate(), ConfigError);
}
