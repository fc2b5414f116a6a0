#include "sharedctl/cdt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

#include "sharedctl/errors.hpp"

namespace sharedctl {

double Triangulation::area(std::size_t t) const {
  const auto& tri = triangles[t];
  return 0.5 * orient2d(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double Triangulation::total_area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) sum += area(t);
  return sum;
}

Point2 Triangulation::centroid(std::size_t t) const {
  const auto& tri = triangles[t];
  const Point2 sum = vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]];
  return (1.0 / 3.0) * sum;
}

bool Triangulation::has_edge(int a, int b) const {
  for (const auto& tri : triangles) {
    for (int e = 0; e < 3; ++e) {
      const int u = tri[e];
      const int v = tri[(e + 1) % 3];
      if ((u == a && v == b) || (u == b && v == a)) return true;
    }
  }
  return false;
}

bool Triangulation::is_constrained(int a, int b) const {
  return std::any_of(constrained_edges.begin(), constrained_edges.end(), [&](const auto& e) {
    return (e[0] == a && e[1] == b) || (e[0] == b && e[1] == a);
  });
}

int Triangulation::locate(Point2 p) const {
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    const Point2 a = vertices[tri[0]];
    const Point2 b = vertices[tri[1]];
    const Point2 c = vertices[tri[2]];
    const double scale = std::max({norm(b - a), norm(c - b), norm(a - c)});
    const double tol = -1e-12 * scale * scale;
    if (orient2d(a, b, p) >= tol && orient2d(b, c, p) >= tol && orient2d(c, a, p) >= tol) {
      return static_cast<int>(t);
    }
  }
  return -1;
}

std::array<int, 2> Triangulation::shared_edge(std::size_t t1, std::size_t t2) const {
  std::array<int, 2> out{-1, -1};
  int n = 0;
  for (int u : triangles[t1]) {
    for (int v : triangles[t2]) {
      if (u == v && n < 2) out[n++] = u;
    }
  }
  return out;
}

namespace {

using Tri = std::array<int, 3>;

// Mutable working triangulation used during construction. Triangle lookup is
// linear; windows hold a few dozen triangles.
class Builder {
 public:
  explicit Builder(std::vector<Point2> pts) : pts_(std::move(pts)) {}

  std::vector<Point2> pts_;
  std::vector<Tri> tris_;
  std::vector<std::array<int, 2>> constraints_;
  double scale_ = 1.0;

  double orient(int a, int b, int c) const { return orient2d(pts_[a], pts_[b], pts_[c]); }

  // Positive beyond roundoff when d lies inside the circumcircle of (a,b,c).
  bool in_circle(int a, int b, int c, int d) const {
    const double s2 = scale_ * scale_;
    return incircle(pts_[a], pts_[b], pts_[c], pts_[d]) > 1e-12 * s2 * s2;
  }

  bool constrained(int a, int b) const {
    return std::any_of(constraints_.begin(), constraints_.end(), [&](const auto& e) {
      return (e[0] == a && e[1] == b) || (e[0] == b && e[1] == a);
    });
  }

  // Index of the triangle holding the directed edge a->b, if any.
  std::optional<std::size_t> find_directed(int a, int b) const {
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const Tri& tri = tris_[t];
      for (int e = 0; e < 3; ++e) {
        if (tri[e] == a && tri[(e + 1) % 3] == b) return t;
      }
    }
    return std::nullopt;
  }

  static int apex(const Tri& tri, int a, int b) {
    for (int v : tri) {
      if (v != a && v != b) return v;
    }
    return -1;
  }

  // Flips the edge a-b shared by (a,b,c) and (b,a,d) into c-d.
  void flip(std::size_t t_ab, std::size_t t_ba, int a, int b) {
    const int c = apex(tris_[t_ab], a, b);
    const int d = apex(tris_[t_ba], a, b);
    tris_[t_ab] = {a, d, c};
    tris_[t_ba] = {d, b, c};
  }

  void legalize(int a, int b, int p) {
    std::vector<std::array<int, 3>> stack{{a, b, p}};
    std::size_t guard = 0;
    while (!stack.empty() && guard++ < 100000) {
      const auto [u, v, w] = stack.back();
      stack.pop_back();
      const auto t_uv = find_directed(u, v);
      const auto t_vu = find_directed(v, u);
      if (!t_uv || !t_vu || constrained(u, v)) continue;
      const int q = apex(tris_[*t_vu], u, v);
      if (apex(tris_[*t_uv], u, v) != w) continue;
      if (in_circle(u, v, w, q)) {
        flip(*t_uv, *t_vu, u, v);
        stack.push_back({u, q, w});
        stack.push_back({q, v, w});
      }
    }
  }

  void insert(int p) {
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const Tri tri = tris_[t];
      const double o0 = orient(tri[0], tri[1], p);
      const double o1 = orient(tri[1], tri[2], p);
      const double o2 = orient(tri[2], tri[0], p);
      if (o0 < 0 || o1 < 0 || o2 < 0) continue;
      const std::array<double, 3> o{o0, o1, o2};
      for (int e = 0; e < 3; ++e) {
        if (o[e] != 0.0) continue;
        // p lies on edge e: split both neighbors of that edge.
        const int a = tri[e];
        const int b = tri[(e + 1) % 3];
        const int c = tri[(e + 2) % 3];
        tris_[t] = {a, p, c};
        tris_.push_back({p, b, c});
        const auto other = find_directed(b, a);
        if (other) {
          const int d = apex(tris_[*other], a, b);
          tris_[*other] = {b, p, d};
          tris_.push_back({p, a, d});
          legalize(a, d, p);
          legalize(d, b, p);
        }
        legalize(b, c, p);
        legalize(c, a, p);
        return;
      }
      tris_[t] = {tri[0], tri[1], p};
      tris_.push_back({tri[1], tri[2], p});
      tris_.push_back({tri[2], tri[0], p});
      legalize(tri[0], tri[1], p);
      legalize(tri[1], tri[2], p);
      legalize(tri[2], tri[0], p);
      return;
    }
    throw GeometryError(GeometryError::Kind::Degenerate, "cdt: point outside the super triangle");
  }

  std::vector<std::array<int, 2>> crossing_edges(int u, int v) const {
    std::vector<std::array<int, 2>> out;
    for (const Tri& tri : tris_) {
      for (int e = 0; e < 3; ++e) {
        const int a = tri[e];
        const int b = tri[(e + 1) % 3];
        if (a > b) continue;  // each undirected interior edge once
        if (segments_properly_intersect(pts_[a], pts_[b], pts_[u], pts_[v])) out.push_back({a, b});
      }
    }
    // Boundary edges of the super triangle appear only once; they never cross.
    return out;
  }

  bool has_undirected(int a, int b) const { return find_directed(a, b) || find_directed(b, a); }

  void recover(int u, int v) {
    if (has_undirected(u, v)) return;
    std::deque<std::array<int, 2>> queue;
    for (const auto& e : crossing_edges(u, v)) queue.push_back(e);
    // Directed edges that cross u-v are listed once per orientation; keep one.
    std::vector<std::array<int, 2>> created;
    std::size_t guard = 0;
    while (!queue.empty()) {
      if (++guard > 100000) {
        throw GeometryError(GeometryError::Kind::Degenerate, "cdt: constraint recovery did not terminate");
      }
      const auto [a, b] = queue.front();
      queue.pop_front();
      const auto t_ab = find_directed(a, b);
      const auto t_ba = find_directed(b, a);
      if (!t_ab || !t_ba) continue;
      const int c = apex(tris_[*t_ab], a, b);
      const int d = apex(tris_[*t_ba], a, b);
      // Quad a, d, b, c must be strictly convex for the flip to be valid.
      const bool convex = orient(a, d, c) > 0 && orient(d, b, c) > 0;
      if (!convex) {
        queue.push_back({a, b});
        continue;
      }
      flip(*t_ab, *t_ba, a, b);
      if (segments_properly_intersect(pts_[c], pts_[d], pts_[u], pts_[v])) {
        queue.push_back({c, d});
      } else {
        created.push_back({c, d});
      }
    }
    // Restore the Delaunay property on the new unconstrained edges.
    bool changed = true;
    std::size_t rounds = 0;
    while (changed && rounds++ < 1000) {
      changed = false;
      for (auto& e : created) {
        const int a = e[0];
        const int b = e[1];
        if ((a == u && b == v) || (a == v && b == u) || constrained(a, b)) continue;
        const auto t_ab = find_directed(a, b);
        const auto t_ba = find_directed(b, a);
        if (!t_ab || !t_ba) continue;
        const int c = apex(tris_[*t_ab], a, b);
        const int d = apex(tris_[*t_ba], a, b);
        if (in_circle(a, b, c, d) && orient(a, d, c) > 0 && orient(d, b, c) > 0) {
          flip(*t_ab, *t_ba, a, b);
          e = {c, d};
          changed = true;
        }
      }
    }
  }
};

}  // namespace

Triangulation triangulate_region(const Rect& window, std::span<const Rect> holes) {
  if (!(window.length > 0.0 && window.width > 0.0)) {
    throw GeometryError(GeometryError::Kind::Degenerate, "cdt: empty window");
  }
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const Rect& h = holes[i];
    if (!(h.length > 0.0 && h.width > 0.0)) {
      throw GeometryError(GeometryError::Kind::Degenerate, "cdt: obstacle with empty footprint");
    }
    if (!(h.x_min() > window.x_min() && h.x_max() < window.x_max() && h.y_min() > window.y_min() &&
          h.y_max() < window.y_max())) {
      throw GeometryError(GeometryError::Kind::Overlap, "cdt: obstacle footprint leaves the window");
    }
    for (std::size_t j = 0; j < i; ++j) {
      // Touching footprints would share vertices or put one on another's edge.
      const Rect& g = holes[j];
      const bool separated = h.x_max() < g.x_min() || g.x_max() < h.x_min() || h.y_max() < g.y_min() ||
                             g.y_max() < h.y_min();
      if (!separated) throw GeometryError(GeometryError::Kind::Overlap, "cdt: overlapping obstacle footprints");
    }
  }

  // Work in window-local coordinates to keep predicate magnitudes small.
  const Point2 origin{window.x_min(), window.y_min()};
  auto corners = [&](const Rect& r) {
    return std::array<Point2, 4>{Point2{r.x_min(), r.y_min()} - origin, Point2{r.x_max(), r.y_min()} - origin,
                                 Point2{r.x_max(), r.y_max()} - origin, Point2{r.x_min(), r.y_max()} - origin};
  };

  std::vector<Point2> pts;
  std::vector<std::array<int, 2>> constraints;
  auto add_rect = [&](const Rect& r) {
    const int base = static_cast<int>(pts.size());
    for (const Point2& c : corners(r)) pts.push_back(c);
    for (int i = 0; i < 4; ++i) constraints.push_back({base + i, base + (i + 1) % 4});
  };
  add_rect(window);
  for (const Rect& h : holes) add_rect(h);

  const int n_real = static_cast<int>(pts.size());
  const double span = std::max(window.length, window.width);
  const double big = 100.0 * span;
  const Point2 mid{0.5 * window.length, 0.5 * window.width};
  pts.push_back({mid.x - 2.0 * big, mid.y - big});
  pts.push_back({mid.x + 2.0 * big, mid.y - big});
  pts.push_back({mid.x, mid.y + 2.0 * big});

  Builder b(pts);
  b.scale_ = span;
  b.tris_.push_back({n_real, n_real + 1, n_real + 2});
  for (int i = 0; i < n_real; ++i) b.insert(i);
  b.constraints_ = constraints;
  for (const auto& c : constraints) b.recover(c[0], c[1]);

  Triangulation out;
  for (int i = 0; i < n_real; ++i) out.vertices.push_back(pts[i] + origin);
  out.constrained_edges = constraints;
  for (const Tri& tri : b.tris_) {
    if (tri[0] >= n_real || tri[1] >= n_real || tri[2] >= n_real) continue;
    const Point2 c = (1.0 / 3.0) * (out.vertices[tri[0]] + out.vertices[tri[1]] + out.vertices[tri[2]]);
    if (c.x <= window.x_min() || c.x >= window.x_max() || c.y <= window.y_min() || c.y >= window.y_max()) continue;
    const bool in_hole = std::any_of(holes.begin(), holes.end(), [&](const Rect& h) { return h.contains_strictly(c); });
    if (in_hole) continue;
    out.triangles.push_back(tri);
  }
  // Deterministic order: sort by centroid station, then lateral.
  std::sort(out.triangles.begin(), out.triangles.end(), [&](const Tri& l, const Tri& r) {
    const Point2 cl = out.vertices[l[0]] + out.vertices[l[1]] + out.vertices[l[2]];
    const Point2 cr = out.vertices[r[0]] + out.vertices[r[1]] + out.vertices[r[2]];
    if (cl.x != cr.x) return cl.x < cr.x;
    return cl.y < cr.y;
  });

  const std::size_t n = out.triangles.size();
  out.adjacency.assign(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int common = 0;
      for (int u : out.triangles[i]) {
        for (int v : out.triangles[j]) common += (u == v);
      }
      if (common == 2) out.adjacency[i][j] = out.adjacency[j][i] = 1;
    }
  }
  return out;
}

}  // namespace sharedctl
