#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace sharedctl {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

// Twice the signed area of (a, b, c); positive when counter-clockwise.
double orient2d(Point2 a, Point2 b, Point2 c);

// Positive when d lies strictly inside the circumcircle of the CCW triangle (a, b, c).
double incircle(Point2 a, Point2 b, Point2 c, Point2 d);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

// True when the open segments (p1,p2) and (q1,q2) cross at a single interior point.
bool segments_properly_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2);

// Axis-aligned rectangle in the road frame.
struct Rect {
  Point2 center;
  double length = 0.0;  // along x (station)
  double width = 0.0;   // along y (lateral)

  double x_min() const { return center.x - 0.5 * length; }
  double x_max() const { return center.x + 0.5 * length; }
  double y_min() const { return center.y - 0.5 * width; }
  double y_max() const { return center.y + 0.5 * width; }
  double area() const { return length * width; }

  bool contains_strictly(Point2 p) const {
    return p.x > x_min() && p.x < x_max() && p.y > y_min() && p.y < y_max();
  }
  bool overlaps(const Rect& o) const {
    return x_min() < o.x_max() && o.x_min() < x_max() && y_min() < o.y_max() && o.y_min() < y_max();
  }
};

using Polyline = std::vector<Point2>;

double polyline_distance(std::span<const Point2> line, Point2 p);

}  // namespace sharedctl
