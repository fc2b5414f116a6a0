#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sharedctl/cdt.hpp"
#include "sharedctl/geometry.hpp"
#include "sharedctl/road.hpp"

namespace sharedctl {

// Vehicle footprint in the road frame (station, lateral).
struct Obstacle {
  Rect footprint;
  double velocity = 0.0;
};

// Lateral band the corridor may not leave, independent of obstacles.
struct LateralClip {
  double lower = 0.0;
  double upper = 0.0;
};

// Vertical free interval of the corridor over a station range.
struct CorridorSlab {
  double x0 = 0.0;
  double x1 = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// The drivable corridor C: the triangle channel from the start point to the
// final region plus its lateral boundaries. Boundaries are step polylines
// following the constrained geometry (road edges, obstacle sides) directly
// above and below the channel.
struct SafeArea {
  Triangulation triangulation;
  std::vector<int> channel;
  Polyline spine;
  std::vector<CorridorSlab> slabs;
  Polyline upper_boundary;
  Polyline lower_boundary;
  // Closed outline: lower boundary left to right, then upper boundary back.
  Polyline outline;
  Point2 start;
  Point2 final_point;

  double x_begin() const { return slabs.front().x0; }
  double x_end() const { return slabs.back().x1; }
  // Closed-corridor membership (boundary inclusive).
  bool contains(Point2 p) const;
  // Lateral interval at station x; at slab joints the tighter side wins.
  std::optional<LateralClip> interval_at(double x) const;
};

Triangulation triangulate(const RoadModel& road, std::span<const Obstacle> obstacles, double s_min,
                          double s_max);

// Breadth-first channel search from the triangle holding `start` to the one
// holding `final_point` (ties by lowest triangle index), then boundary
// extraction. Throws GeometryError(Containment) if either point is outside
// the free space and GeometryError(Disconnected) when no channel exists.
SafeArea find_corridor(const Triangulation& tri, Point2 start, Point2 final_point,
                       std::optional<LateralClip> clip = std::nullopt);

// Minimum distance from p to the corridor outline; 0 on or outside it.
double distance_to_boundaries(const SafeArea& area, Point2 p);

// Distance from p to the corridor when outside it; 0 inside.
double corridor_violation(const SafeArea& area, Point2 p);

struct CorridorOptions {
  double behind = 20.0;
  double ahead = 80.0;
  bool lane_clip = true;
  // How far past the ego lane markings the lane-keeping clip extends, in lane widths.
  double clip_lanes = 0.5;
  double final_gap = 2.0;  // d_o: distance of the final region behind the preceding

  void validate() const;
};

struct CorridorRequest {
  RoadPoint ego;
  int target_lane = 0;
  std::vector<Obstacle> obstacles;
  std::optional<Rect> preceding;
};

// Windowing, final-region placement and lane clipping around find_corridor.
// Obstacles not fully inside the window are left out of the triangulation.
SafeArea build_corridor(const RoadModel& road, const CorridorRequest& req, const CorridorOptions& opts);

}  // namespace sharedctl
