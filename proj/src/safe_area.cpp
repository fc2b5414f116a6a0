#include "sharedctl/safe_area.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "sharedctl/errors.hpp"

namespace sharedctl {

void CorridorOptions::validate() const {
  if (!(behind >= 0.0 && ahead > 0.0)) throw ConfigError("safe_area: window extents must be positive");
  if (!(clip_lanes >= 0.0)) throw ConfigError("safe_area: clip_lanes must be non-negative");
  if (!(final_gap >= 0.0)) throw ConfigError("safe_area: final_gap must be non-negative");
}

Triangulation triangulate(const RoadModel& road, std::span<const Obstacle> obstacles, double s_min,
                          double s_max) {
  const Rect window{{0.5 * (s_min + s_max), 0.5 * road.width()}, s_max - s_min, road.width()};
  std::vector<Rect> holes;
  holes.reserve(obstacles.size());
  for (const Obstacle& o : obstacles) holes.push_back(o.footprint);
  return triangulate_region(window, holes);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool inside_hole(const Triangulation& tri, Point2 p) {
  // Holes are exactly the rectangles bounded by constrained edges other than
  // the window (the first four).
  for (std::size_t i = 4; i + 3 < tri.constrained_edges.size(); i += 4) {
    const Point2 lo = tri.vertices[tri.constrained_edges[i][0]];
    const Point2 hi = tri.vertices[tri.constrained_edges[i + 1][1]];
    if (p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y) return true;
  }
  return false;
}

// Lateral coordinates of constrained edges crossing station x, nearest
// above and below y.
std::pair<double, double> ray_cast(const Triangulation& tri, double x, double y) {
  double lower = -kInf;
  double upper = kInf;
  for (const auto& e : tri.constrained_edges) {
    const Point2 a = tri.vertices[e[0]];
    const Point2 b = tri.vertices[e[1]];
    if (a.x == b.x) continue;
    const double lo = std::min(a.x, b.x);
    const double hi = std::max(a.x, b.x);
    if (x < lo || x > hi) continue;
    const double t = (x - a.x) / (b.x - a.x);
    const double ye = a.y + t * (b.y - a.y);
    if (ye > y) upper = std::min(upper, ye);
    if (ye < y) lower = std::max(lower, ye);
  }
  return {lower, upper};
}

// Lateral coordinate of the spine at station x, first crossing in path order.
std::optional<double> spine_at(const Polyline& spine, double x) {
  for (std::size_t i = 0; i + 1 < spine.size(); ++i) {
    const Point2 a = spine[i];
    const Point2 b = spine[i + 1];
    const double lo = std::min(a.x, b.x);
    const double hi = std::max(a.x, b.x);
    if (x < lo || x > hi) continue;
    if (a.x == b.x) return a.y;
    return a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y);
  }
  return std::nullopt;
}

std::vector<int> bfs_channel(const Triangulation& tri, int from, int to) {
  const std::size_t n = tri.size();
  std::vector<int> parent(n, -1);
  std::vector<std::uint8_t> seen(n, 0);
  std::queue<int> q;
  q.push(from);
  seen[from] = 1;
  while (!q.empty()) {
    const int t = q.front();
    q.pop();
    if (t == to) break;
    for (std::size_t j = 0; j < n; ++j) {
      if (tri.adjacency[t][j] && !seen[j]) {
        seen[j] = 1;
        parent[j] = t;
        q.push(static_cast<int>(j));
      }
    }
  }
  if (!seen[to]) return {};
  std::vector<int> path;
  for (int t = to; t != -1; t = parent[t]) path.push_back(t);
  std::reverse(path.begin(), path.end());
  return path;
}

void push_point(Polyline& line, Point2 p) {
  if (line.empty() || !(line.back() == p)) line.push_back(p);
}

}  // namespace

SafeArea find_corridor(const Triangulation& tri, Point2 start, Point2 final_point,
                       std::optional<LateralClip> clip) {
  if (inside_hole(tri, start) || inside_hole(tri, final_point)) {
    throw GeometryError(GeometryError::Kind::Containment, "safe_area: start or final point inside an obstacle");
  }
  const int ts = tri.locate(start);
  const int tf = tri.locate(final_point);
  if (ts < 0 || tf < 0) {
    throw GeometryError(GeometryError::Kind::Containment, "safe_area: start or final point outside the window");
  }

  SafeArea area;
  area.triangulation = tri;
  area.start = start;
  area.final_point = final_point;
  area.channel = bfs_channel(tri, ts, tf);
  if (area.channel.empty()) {
    throw GeometryError(GeometryError::Kind::Disconnected, "safe_area: no channel to the final region");
  }

  area.spine.push_back(start);
  for (std::size_t i = 0; i + 1 < area.channel.size(); ++i) {
    const auto e = tri.shared_edge(area.channel[i], area.channel[i + 1]);
    area.spine.push_back(0.5 * (tri.vertices[e[0]] + tri.vertices[e[1]]));
  }
  area.spine.push_back(final_point);

  double spine_lo = kInf;
  double spine_hi = -kInf;
  for (const Point2& p : area.spine) {
    spine_lo = std::min(spine_lo, p.x);
    spine_hi = std::max(spine_hi, p.x);
  }
  // Leftmost spine point anchors the backward extension toward the window start.
  const auto leftmost = *std::min_element(area.spine.begin(), area.spine.end(),
                                          [](Point2 a, Point2 b) { return a.x < b.x; });

  double window_lo = kInf;
  std::vector<double> xs;
  for (const Point2& v : tri.vertices) {
    window_lo = std::min(window_lo, v.x);
    xs.push_back(v.x);
  }
  xs.push_back(spine_lo);
  xs.push_back(spine_hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto slab_at = [&](double x0, double x1) -> std::optional<CorridorSlab> {
    const double xm = 0.5 * (x0 + x1);
    const double y = xm < spine_lo ? leftmost.y : spine_at(area.spine, xm).value_or(leftmost.y);
    if (inside_hole(tri, {xm, y})) return std::nullopt;
    auto [lo, hi] = ray_cast(tri, xm, y);
    if (clip) {
      lo = std::max(lo, clip->lower);
      hi = std::min(hi, clip->upper);
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
    return CorridorSlab{x0, x1, lo, hi};
  };

  // Forward slabs cover the spine; backward slabs extend to the window start
  // until an obstacle blocks the way.
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] < spine_lo || xs[i + 1] > spine_hi) continue;
    if (auto s = slab_at(xs[i], xs[i + 1])) area.slabs.push_back(*s);
  }
  std::vector<CorridorSlab> back;
  for (std::size_t i = xs.size(); i-- > 1;) {
    if (xs[i] > spine_lo || xs[i - 1] < window_lo) continue;
    auto s = slab_at(xs[i - 1], xs[i]);
    if (!s) break;
    back.push_back(*s);
  }
  std::reverse(back.begin(), back.end());
  area.slabs.insert(area.slabs.begin(), back.begin(), back.end());
  if (area.slabs.empty()) {
    // Start and final region share a station: a zero-length corridor is
    // widened to a sliver so membership queries stay well defined.
    const double x = start.x;
    auto [lo, hi] = ray_cast(tri, x, start.y);
    if (clip) {
      lo = std::max(lo, clip->lower);
      hi = std::min(hi, clip->upper);
    }
    area.slabs.push_back({x, x, lo, hi});
  }

  for (const CorridorSlab& s : area.slabs) {
    push_point(area.lower_boundary, {s.x0, s.lower});
    push_point(area.lower_boundary, {s.x1, s.lower});
    push_point(area.upper_boundary, {s.x0, s.upper});
    push_point(area.upper_boundary, {s.x1, s.upper});
  }
  area.outline = area.lower_boundary;
  for (auto it = area.upper_boundary.rbegin(); it != area.upper_boundary.rend(); ++it) {
    push_point(area.outline, *it);
  }
  push_point(area.outline, area.lower_boundary.front());
  return area;
}

std::optional<LateralClip> SafeArea::interval_at(double x) const {
  std::optional<LateralClip> out;
  for (const CorridorSlab& s : slabs) {
    if (x < s.x0 || x > s.x1) continue;
    if (!out) {
      out = LateralClip{s.lower, s.upper};
    } else {
      out->lower = std::max(out->lower, s.lower);
      out->upper = std::min(out->upper, s.upper);
    }
  }
  return out;
}

bool SafeArea::contains(Point2 p) const {
  const auto iv = interval_at(p.x);
  return iv && p.y >= iv->lower && p.y <= iv->upper;
}


double distance_to_boundaries(const SafeArea& area, Point2 p) {
  if (!area.contains(p)) return 0.0;
  return polyline_distance(area.outline, p);
}

double corridor_violation(const SafeArea& area, Point2 p) {
  if (area.contains(p)) return 0.0;
  return polyline_distance(area.outline, p);
}

SafeArea build_corridor(const RoadModel& road, const CorridorRequest& req, const CorridorOptions& opts) {
  const double s_min = req.ego.s - opts.behind;
  const double s_max = req.ego.s + opts.ahead;
  constexpr double kMargin = 0.05;
  std::vector<Obstacle> inside;
  for (const Obstacle& o : req.obstacles) {
    const Rect& f = o.footprint;
    if (f.x_min() > s_min + kMargin && f.x_max() < s_max - kMargin && f.y_min() > kMargin &&
        f.y_max() < road.width() - kMargin) {
      inside.push_back(o);
    }
  }
  const Triangulation tri = triangulate(road, inside, s_min, s_max);

  const double lane_n = road.lane_offset(req.target_lane);
  double final_x = s_max - 1.0;
  if (req.preceding && req.preceding->x_min() < s_max) {
    final_x = std::min(final_x, req.preceding->x_min() - opts.final_gap);
  }
  final_x = std::max(final_x, s_min + 0.5);
  const Point2 start{req.ego.s, req.ego.n};
  const Point2 final_point{final_x, lane_n};

  std::optional<LateralClip> clip;
  if (opts.lane_clip) {
    const double half = 0.5 * road.lane_width();
    const double margin = opts.clip_lanes * road.lane_width();
    clip = LateralClip{std::max(0.0, lane_n - half - margin),
                       std::min(road.width(), lane_n + half + margin)};
  }
  return find_corridor(tri, start, final_point, clip);
}

}  // namespace sharedctl
