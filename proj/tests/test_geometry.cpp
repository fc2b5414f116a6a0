#include "doctest.h"
#include "sharedctl/geometry.hpp"

using namespace sharedctl;

TEST_CASE("orient2d sign follows winding") {
  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(1.0));
  CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) == doctest::Approx(-1.0));
  CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == 0.0);
}

TEST_CASE("incircle against the unit circle") {
  const Point2 a{1, 0}, b{0, 1}, c{-1, 0};
  CHECK(incircle(a, b, c, {0, 0}) > 0.0);
  CHECK(incircle(a, b, c, {2, 0}) < 0.0);
  CHECK(incircle(a, b, c, {0, -1}) == doctest::Approx(0.0));
}

TEST_CASE("point-segment distance") {
  CHECK(point_segment_distance({0.5, 2}, {0, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(point_segment_distance({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
  CHECK(point_segment_distance({-3, 4}, {0, 0}, {1, 0}) == doctest::Approx(5.0));
}

TEST_CASE("proper intersection excludes shared endpoints and collinear overlap") {
  CHECK(segments_properly_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK_FALSE(segments_properly_intersect({0, 0}, {1, 1}, {1, 1}, {2, 0}));
  CHECK_FALSE(segments_properly_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
}

TEST_CASE("rect queries") {
  const Rect r{{10, 2}, 4, 2};
  CHECK(r.x_min() == 8.0);
  CHECK(r.y_max() == 3.0);
  CHECK(r.area() == 8.0);
  CHECK(r.contains_strictly({10, 2}));
  CHECK_FALSE(r.contains_strictly({8, 2}));
  CHECK(r.overlaps(Rect{{13, 2}, 4, 2}));
  CHECK_FALSE(r.overlaps(Rect{{14, 2}, 4, 2}));
}

TEST_CASE("polyline distance is the minimum over segments") {
  const Polyline pl{{0, 0}, {1, 0}, {1, 1}};
  CHECK(polyline_distance(pl, {2, 0.5}) == doctest::Approx(1.0));
  CHECK(polyline_distance(pl, {0.5, -0.25}) == doctest::Approx(0.25));
}
