#pragma once

#include "sharedctl/geometry.hpp"

namespace sharedctl {

// Position in the curvilinear road frame: station along the lane-0
// centerline and lateral coordinate measured from the right road edge, so
// lane i is centered at (i + 0.5) * lane_width on either road kind.
struct RoadPoint {
  double s = 0.0;
  double n = 0.0;
};

class RoadModel {
 public:
  enum class Kind { StraightMultiLane, ConstantRadiusCurve };

  static RoadModel straight(double lane_width, int lane_count, double length);
  // Left-hand constant-radius curve; `radius` is the radius of the lane-0
  // centerline and the curve enters along +x from the origin.
  static RoadModel curve(double lane_width, int lane_count, double radius, double length);

  Kind kind() const { return kind_; }
  double lane_width() const { return lane_width_; }
  int lane_count() const { return lane_count_; }
  double radius() const { return radius_; }
  double length() const { return length_; }
  double width() const { return lane_width_ * lane_count_; }

  // Tangent direction of the centerline at station s. Throws ExtentError
  // when s lies outside [0, length].
  double heading(double s) const;

  // Point on the centerline of `lane` at station s, in world coordinates.
  Point2 lane_center(int lane, double s) const;
  double lane_offset(int lane) const;

  Point2 to_world(RoadPoint rp) const;
  // Projects a world point onto the road frame. For the curve the station is
  // unwrapped to the branch nearest `hint_s`.
  RoadPoint to_road(Point2 world, double hint_s = 0.0) const;

  // Ratio ds/d(arc length) along a line of constant n; 1 for straight roads.
  double station_rate(double n) const;

 private:
  RoadModel(Kind kind, double lane_width, int lane_count, double radius, double length);
  void check_station(double s) const;
  Point2 curve_center() const { return {0.0, lane_offset(0) + radius_}; }

  Kind kind_;
  double lane_width_;
  int lane_count_;
  double radius_;
  double length_;
};

}  // namespace sharedctl
