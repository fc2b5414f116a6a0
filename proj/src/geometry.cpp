#include "sharedctl/geometry.hpp"

#include <algorithm>
#include <limits>

namespace sharedctl {

// Both predicates evaluate in long double. Inputs are road-frame
// coordinates of at most a few hundred meters, so the extended mantissa
// keeps the sign correct for every configuration the corridor builder
// produces (axis-aligned rectangles on a regular lane grid).
double orient2d(Point2 a, Point2 b, Point2 c) {
  const long double acx = static_cast<long double>(a.x) - c.x;
  const long double bcx = static_cast<long double>(b.x) - c.x;
  const long double acy = static_cast<long double>(a.y) - c.y;
  const long double bcy = static_cast<long double>(b.y) - c.y;
  return static_cast<double>(acx * bcy - acy * bcx);
}

double incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const long double adx = static_cast<long double>(a.x) - d.x;
  const long double ady = static_cast<long double>(a.y) - d.y;
  const long double bdx = static_cast<long double>(b.x) - d.x;
  const long double bdy = static_cast<long double>(b.y) - d.y;
  const long double cdx = static_cast<long double>(c.x) - d.x;
  const long double cdy = static_cast<long double>(c.y) - d.y;
  const long double alift = adx * adx + ady * ady;
  const long double blift = bdx * bdx + bdy * bdy;
  const long double clift = cdx * cdx + cdy * cdy;
  const long double det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                          clift * (adx * bdy - bdx * ady);
  return static_cast<double>(det);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

bool segments_properly_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double d1 = orient2d(q1, q2, p1);
  const double d2 = orient2d(q1, q2, p2);
  const double d3 = orient2d(p1, p2, q1);
  const double d4 = orient2d(p1, p2, q2);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double polyline_distance(std::span<const Point2> line, Point2 p) {
  if (line.empty()) return std::numeric_limits<double>::infinity();
  if (line.size() == 1) return norm(p - line.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    best = std::min(best, point_segment_distance(p, line[i], line[i + 1]));
  }
  return best;
}

}  // namespace sharedctl
