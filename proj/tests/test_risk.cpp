#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sharedctl/errors.hpp"
#include "sharedctl/risk.hpp"

using namespace sharedctl;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Independent scalar oracle of the distance and velocity kernels.
double dpf_oracle(double c, double gap, const DpfParams& p) {
  if (c <= 0) return 0;
  const double u_rd = p.a_f * std::exp(-std::pow(gap, 2 * p.b) / (2 * std::pow(p.sigma_x, 2 * p.b)));
  const double u_eo = p.alpha * std::exp(c) / (2 * std::numbers::pi * std::cyl_bessel_i(0.0, c));
  return u_rd * u_eo;
}

using Neighbors = std::array<std::optional<LongitudinalKinematics>, 3>;

}  // namespace

TEST_CASE("bessel I0") {
  CHECK(bessel_i0(0.0) == 1.0);
  CHECK(std::abs(bessel_i0(1.0) - 1.26606587775201) < 1e-10);
  for (double x : {0.3, 2.0, 7.5, 20.0, 45.0}) {
    CHECK(bessel_i0(-x) == bessel_i0(x));
    CHECK(rel(bessel_i0(x), std::cyl_bessel_i(0.0, x)) < 1e-12);
    CHECK(std::abs(log_bessel_i0(x) - std::log(std::cyl_bessel_i(0.0, x))) < 1e-12);
  }
  CHECK(std::isfinite(log_bessel_i0(800.0)));
}

TEST_CASE("boundary potential") {
  const ApfParams p;
  CHECK(boundary_potential(0.0, p) == 30.0);
  CHECK(rel(boundary_potential(1.0, p), 11.03638323514327) < 1e-9);
  CHECK(rel(boundary_potential(1.79, p), 1.2178626324189075) < 1e-9);
  CHECK(boundary_potential(1.81, p) == 0.0);
  CHECK(boundary_potential(2.0, p) == 0.0);
  double last = boundary_potential(0.0, p);
  for (double r = 0.01; r < 3.0; r += 0.01) {
    const double v = boundary_potential(r, p);
    CHECK(v <= last);
    last = v;
  }
}

TEST_CASE("lateral risk on a corridor") {
  const RoadModel road = RoadModel::straight(3.75, 2, 1000);
  const Triangulation tri = triangulate(road, {}, 0, 100);
  const SafeArea a = find_corridor(tri, {10, 1.875}, {90, 1.875}, LateralClip{0.0, 3.75});
  const ApfParams p;
  const LateralRisk center = lateral_risk(a, {50, 1.875}, p);
  CHECK(center.distance == doctest::Approx(1.875));
  CHECK(center.r_y == 0.0);
  const LateralRisk edge = lateral_risk(a, {50, 1.0}, p);
  CHECK(edge.distance == doctest::Approx(1.0));
  CHECK(rel(edge.r_y, std::exp(-1.0)) < 1e-9);
  CHECK(lateral_risk(a, {50, 5.0}, p).r_y == 1.0);
}

TEST_CASE("safe distance") {
  const DpfParams p;
  CHECK(rel(safe_distance(15, 12, p), 81.0 / 14.0 + 4.25) < 1e-12);
  CHECK(safe_distance(15, 12, p) == doctest::Approx(10.036).epsilon(1e-4));
  CHECK(rel(safe_distance(15, 15, p), 4.25) < 1e-12);
  CHECK(safe_distance(0, 0, p) == 2.0);
  CHECK(safe_distance(12, 15, p) == safe_distance(15, 12, p));
}

TEST_CASE("closing speed convention") {
  CHECK(closing_speed(0, 15, 10, 12) == 3.0);
  CHECK(closing_speed(0, 12, 10, 15) == -3.0);
  CHECK(closing_speed(10, 12, 0, 15) == 3.0);
  CHECK(closing_speed(10, 15, 0, 12) == -3.0);
}

TEST_CASE("dpf values") {
  const DpfParams p;
  CHECK(dpf(0.0, 4.0, p) == 0.0);
  CHECK(dpf(-2.0, 4.0, p) == 0.0);
  CHECK(std::isinf(log_dpf(0.0, 4.0, p)));
  CHECK(rel(dpf(3.0, 4.0, p), 7.94503801963749) < 1e-9);
  CHECK(dpf(3.0, 4.0, p) == doctest::Approx(7.944).epsilon(1e-3));
  CHECK(rel(dpf(3.0, 4.0, p), dpf_oracle(3.0, 4.0, p)) < 1e-12);
  CHECK(dpf(3.0, 38.0, p) < 1e-300);
  CHECK(log_dpf(3.0, 38.0, p) == doctest::Approx(std::log(dpf_oracle(3.0, 4.0, p)) + 0.5 - std::pow(38.0, 4) / 512));
  CHECK(dpf(3.0, -4.0, p) == dpf(3.0, 4.0, p));
}

TEST_CASE("dpf increases with closing speed") {
  const DpfParams p;
  double last = 0.0;
  for (double c = 0.05; c < 10.0; c += 0.05) {
    const double v = dpf(c, 5.0, p);
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("log and direct domains agree") {
  const DpfParams p;
  for (double c = 0.1; c < 8; c += 0.7) {
    for (double g = 0.0; g < 14; g += 0.9) {
      const double direct = dpf(c, g, p);
      if (direct < 1e-250) continue;
      CHECK(std::abs(std::exp(log_dpf(c, g, p)) / direct - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("longitudinal risk weighting and normalization") {
  const DpfParams p;
  const TaskWeights lk = TaskWeights::lane_keep();
  const LongitudinalKinematics ego{0.0, 15.0};

  SUBCASE("no closing neighbors") {
    Neighbors n{LongitudinalKinematics{-10, 10}, LongitudinalKinematics{10, 20}, LongitudinalKinematics{8, 15}};
    const auto r = longitudinal_risk(ego, n, lk, p);
    CHECK(r.r_x == 0.0);
    for (const auto& pr : r.pairs) CHECK(pr.ratio == 0.0);
  }
  SUBCASE("preceding at the safe distance") {
    const double ds = safe_distance(15, 12, p);
    Neighbors n{std::nullopt, std::nullopt, LongitudinalKinematics{ds, 12}};
    const auto r = longitudinal_risk(ego, n, lk, p);
    CHECK(r.pairs[2].present);
    CHECK(r.pairs[2].ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.r_x == doctest::Approx(0.7).epsilon(1e-12));
    CHECK_FALSE(r.pairs[0].present);
  }
  SUBCASE("ratio is the normalized dpf") {
    const double ds = safe_distance(15, 12, p);
    const double gap = ds + 1.0;
    Neighbors n{std::nullopt, std::nullopt, LongitudinalKinematics{gap, 12}};
    const auto r = longitudinal_risk(ego, n, lk, p);
    const double expected = dpf_oracle(3, gap, p) / dpf_oracle(3, ds, p);
    CHECK(rel(r.pairs[2].ratio, expected) < 1e-9);
    CHECK(rel(r.r_x, 0.7 * expected) < 1e-9);
  }
  SUBCASE("clamped inside the safe distance") {
    Neighbors n{std::nullopt, std::nullopt, LongitudinalKinematics{3.0, 12}};
    CHECK(longitudinal_risk(ego, n, lk, p).r_x == doctest::Approx(0.7));
  }
  SUBCASE("follower closing from behind") {
    Neighbors n{LongitudinalKinematics{-5.0, 18.0}, std::nullopt, std::nullopt};
    const auto r = longitudinal_risk(ego, n, TaskWeights::lane_change(), p);
    CHECK(r.pairs[0].closing == 3.0);
    CHECK(r.r_x == doctest::Approx(0.8 * r.pairs[0].ratio));
    CHECK(r.r_x > 0.0);
  }
}

TEST_CASE("r_x non-decreasing as the gap shrinks") {
  const DpfParams p;
  const LongitudinalKinematics ego{0.0, 15.0};
  double last = 0.0;
  for (double gap = 30.0; gap > 0.5; gap -= 0.25) {
    Neighbors n{std::nullopt, std::nullopt, LongitudinalKinematics{gap, 12}};
    const double r = longitudinal_risk(ego, n, TaskWeights::lane_keep(), p).r_x;
    CHECK(r >= last);
    last = r;
  }
}

TEST_CASE("risks stay in [0,1] for random states") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> xs(-60, 60), vs(0, 35), rb(-1, 5);
  const DpfParams p;
  const ApfParams a;
  for (int i = 0; i < 3000; ++i) {
    const LongitudinalKinematics ego{xs(rng), vs(rng)};
    Neighbors n{LongitudinalKinematics{ego.x - std::abs(xs(rng)), vs(rng)},
                LongitudinalKinematics{ego.x + std::abs(xs(rng)), vs(rng)},
                LongitudinalKinematics{ego.x + std::abs(xs(rng)), vs(rng)}};
    const auto r = longitudinal_risk(ego, n, TaskWeights::lane_keep(), p);
    CHECK(r.r_x >= 0.0);
    CHECK(r.r_x <= 1.0);
    for (const auto& pr : r.pairs) CHECK((pr.ratio >= 0.0 && pr.ratio <= 1.0));
    const double ry = boundary_potential(std::max(0.0, rb(rng)), a) / a.alpha_f;
    CHECK((ry >= 0.0 && ry <= 1.0));
  }
}

TEST_CASE("parameter validation and roles") {
  ApfParams a;
  a.sigma_y = 0;
  CHECK_THROWS_AS(a.validate(), ConfigError);
  DpfParams d;
  d.b = 0.5;
  CHECK_THROWS_AS(d.validate(), ConfigError);
  TaskWeights w{{0.5, 0.5, 0.5}};
  CHECK_THROWS_AS(w.validate(), ConfigError);
  CHECK(parse_role("leader") == NeighborRole::Leader);
  CHECK_FALSE(parse_role("truck"));
  CHECK(role_name(NeighborRole::Follower) == "follower");
}
