#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sharedctl/io.hpp"
#include "sharedctl/sim.hpp"

using namespace sharedctl;

namespace {

ScenarioConfig scenario(const std::string& name) {
  return load_scenario(std::string(SHAREDCTL_SCENARIO_DIR) + "/" + name + ".scenario");
}

std::string csv(const RunResult& r) {
  std::ostringstream os;
  write_trace_csv(os, r.trace);
  return os.str();
}

}  // namespace

TEST_CASE("initial state and neighbors") {
  const ScenarioConfig cfg = scenario("case1");
  const RoadModel road = cfg.make_road();
  const VehicleState x = initial_ego_state(cfg, road);
  CHECK(x.x == 0.0);
  CHECK(x.y == doctest::Approx(1.875));
  CHECK(x.vx == 15.0);
  const auto n0 = neighbors_at(cfg, road, 0.0);
  REQUIRE(n0[2]);
  CHECK(n0[2]->s == 38.0);
  const auto n2 = neighbors_at(cfg, road, 2.0);
  CHECK(n2[2]->s == doctest::Approx(62.0));
  CHECK(n2[0]->s == doctest::Approx(-5.0 + 24.0));

  // On the curve the start is a steady turn.
  const ScenarioConfig c2 = scenario("case2");
  const RoadModel curve = c2.make_road();
  const VehicleState y = initial_ego_state(c2, curve);
  CHECK(y.r == doctest::Approx(c2.ego.speed / (curve.station_rate(curve.lane_offset(0)) * 60.0)));
}

TEST_CASE("step bookkeeping on Case 1") {
  const ScenarioConfig cfg = scenario("case1");
  const RunResult r = simulate(cfg);
  REQUIRE(r.trace.size() == 400);
  CHECK(r.summary.steps == 400);
  CHECK_FALSE(r.summary.aborted);
  for (const TraceRecord& rec : r.trace) {
    CHECK(rec.t == rec.k * cfg.dt);
    CHECK(rec.u.a == rec.u_a_act.a + rec.u_h_act.a);
    CHECK(rec.u.delta == rec.u_a_act.delta + rec.u_h_act.delta);
    CHECK((rec.alpha >= 0.0 && rec.alpha <= 1.0));
    CHECK((rec.r_y >= 0.0 && rec.r_y <= 1.0));
    CHECK((rec.r_x >= 0.0 && rec.r_x <= 1.0));
  }
  CHECK(r.trace[5].u_a_f == r.trace[5].u_a_des);
  CHECK(r.trace[30].u_a_f.delta == doctest::Approx(cfg.mpc.bounds.clip(r.trace[30].u_a_des + ControlVector{0, 0.3}).delta));
}

TEST_CASE("zero duration") {
  ScenarioConfig cfg = scenario("case1");
  cfg.duration = 0.0;
  const RunResult r = simulate(cfg);
  CHECK(r.trace.empty());
  CHECK(r.summary.steps == 0);
  CHECK(r.summary.min_gap_preceding == doctest::Approx(38.0 - 4.5));
}

TEST_CASE("nominal run: driver idle, automation untouched") {
  const ScenarioConfig cfg = scenario("nominal");
  const RunResult r = simulate(cfg);
  for (const TraceRecord& rec : r.trace) {
    CHECK(rec.u_a_f == rec.u_a_des);
    // The ratio guard only caps commands too small for the healthy band.
    for (int i = 0; i < 2; ++i) {
      if (rec.u_a_act[i] == rec.u_a_des[i]) continue;
      CHECK(rec.branch[i] == 3);
      CHECK(std::abs(rec.u_a_des[i]) < cfg.allocation.epsilon / cfg.allocation.tolerance * 1.1);
      CHECK(rec.u_a_act[i] == rec.alpha * rec.u_a_des[i]);
    }
    CHECK(std::abs(rec.u_h_act.a) < 0.02);
    CHECK(std::abs(rec.u_h_act.delta) < 0.02);
    CHECK(rec.corridor_violation == 0.0);
  }
  CHECK_FALSE(r.summary.collision);
}

TEST_CASE("automation-only mode has no driver input") {
  ScenarioConfig cfg = scenario("case1");
  cfg.mode = Mode::AutomationOnly;
  cfg.duration = 2.0;
  const RunResult r = simulate(cfg);
  for (const TraceRecord& rec : r.trace) {
    CHECK(rec.u_h_act == ControlVector{});
    CHECK(rec.u_a_act == rec.u_a_f);
    CHECK(rec.u == rec.u_a_f);
  }
}

TEST_CASE("runs are byte-identical") {
  ScenarioConfig cfg = scenario("case2");
  cfg.duration = 5.0;
  CHECK(csv(simulate(cfg)) == csv(simulate(cfg)));
}

TEST_CASE("trace csv layout") {
  ScenarioConfig cfg = scenario("case1");
  cfg.duration = 0.1;
  const std::string text = csv(simulate(cfg));
  std::istringstream is(text);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  const auto cols = trace_columns();
  CHECK(std::count(header.begin(), header.end(), ',') + 1 == static_cast<long>(cols.size()));
  CHECK(std::count(row.begin(), row.end(), ',') + 1 == static_cast<long>(cols.size()));
  CHECK(header.rfind("k,t,x,y,psi", 0) == 0);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("numerical abort carries the partial run") {
  ScenarioConfig cfg = scenario("case1");
  cfg.duration = 3.0;
  cfg.ego.speed = 0.6;
  cfg.mpc.bounds.max.a = -4.9;
  cfg.mpc.bounds.min.a = -5.0;
  cfg.mode = Mode::AutomationOnly;
  try {
    simulate(cfg);
    FAIL("expected an abort");
  } catch (const NumericalAbort& e) {
    CHECK(e.partial().summary.aborted);
    CHECK(e.partial().trace.size() < 60);
  }
}
