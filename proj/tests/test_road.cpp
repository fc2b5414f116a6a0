#include <cmath>

#include "doctest.h"
#include "sharedctl/errors.hpp"
#include "sharedctl/road.hpp"

using namespace sharedctl;

TEST_CASE("straight road heading and lane centers") {
  const RoadModel road = RoadModel::straight(3.5, 2, 500);
  CHECK(road.heading(0) == 0.0);
  CHECK(road.heading(250) == 0.0);
  const Point2 p = road.lane_center(0, 10);
  CHECK(p.x == doctest::Approx(10));
  CHECK(p.y == doctest::Approx(1.75));
  const Point2 q = road.lane_center(1, 0);
  CHECK(q.x == doctest::Approx(0));
  CHECK(q.y == doctest::Approx(5.25));
}

TEST_CASE("curve heading is s / R") {
  const RoadModel road = RoadModel::curve(3.5, 2, 60, 300);
  CHECK(road.heading(0) == 0.0);
  CHECK(road.heading(30) == doctest::Approx(0.5).epsilon(1e-15));
  for (double s1 : {0.0, 17.0, 120.0}) {
    for (double s2 : {5.0, 99.0, 250.0}) {
      CHECK(road.heading(s2) - road.heading(s1) == doctest::Approx((s2 - s1) / 60.0));
    }
  }
}

TEST_CASE("curve lane 0 entry point sits at radius R from the center on the entry tangent") {
  const RoadModel road = RoadModel::curve(3.5, 2, 60, 300);
  const Point2 p = road.lane_center(0, 0);
  CHECK(p.x == doctest::Approx(0.0));
  // Center lies at +R along the left normal of the entry tangent (+x).
  const Point2 center{0.0, p.y + 60.0};
  CHECK(norm(p - center) == doctest::Approx(60.0));
  const Point2 later = road.lane_center(0, 47.0);
  CHECK(norm(later - center) == doctest::Approx(60.0));
}

TEST_CASE("adjacent lane centers are lane_width apart") {
  for (const RoadModel& road : {RoadModel::straight(3.5, 3, 200), RoadModel::curve(3.75, 3, 60, 200)}) {
    for (double s : {0.0, 12.5, 80.0, 199.0}) {
      CHECK(norm(road.lane_center(1, s) - road.lane_center(0, s)) == doctest::Approx(road.lane_width()));
      CHECK(norm(road.lane_center(2, s) - road.lane_center(1, s)) == doctest::Approx(road.lane_width()));
    }
  }
}

TEST_CASE("road frame round trip") {
  const RoadModel road = RoadModel::curve(3.5, 2, 60, 400);
  for (double s : {0.0, 10.0, 150.0, 390.0}) {
    for (double n : {0.2, 1.75, 6.0}) {
      const RoadPoint back = road.to_road(road.to_world({s, n}), s);
      CHECK(back.s == doctest::Approx(s).epsilon(1e-12));
      CHECK(back.n == doctest::Approx(n).epsilon(1e-12));
    }
  }
}

TEST_CASE("station rate on the curve") {
  const RoadModel road = RoadModel::curve(3.5, 2, 60, 400);
  CHECK(road.station_rate(1.75) == doctest::Approx(1.0));
  // Lane 1 centerline runs 3.5 m closer to the curve center.
  CHECK(road.station_rate(5.25) == doctest::Approx(60.0 / 56.5));
  CHECK(RoadModel::straight(3.5, 2, 10).station_rate(5.25) == 1.0);
}

TEST_CASE("extent and construction errors") {
  const RoadModel road = RoadModel::straight(3.5, 2, 100);
  CHECK_THROWS_AS(road.heading(-0.1), ExtentError);
  CHECK_THROWS_AS(road.heading(100.1), ExtentError);
  CHECK_THROWS_AS(road.lane_offset(2), ExtentError);
  CHECK_THROWS_AS(road.lane_center(-1, 0), ExtentError);
  CHECK_THROWS_AS(RoadModel::straight(1.9, 2, 100), ConfigError);
  CHECK_THROWS_AS(RoadModel::curve(3.5, 2, -5, 100), ConfigError);
  CHECK_THROWS_AS(RoadModel::curve(3.5, 40, 60, 100), ConfigError);
}
