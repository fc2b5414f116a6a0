#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sharedctl/geometry.hpp"

namespace sharedctl {

// Constrained Delaunay triangulation of a rectangular window with
// rectangular holes. Every vertex is a window or hole corner; triangles are
// counter-clockwise and cover exactly the free space.
struct Triangulation {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> constrained_edges;
  // D(i, j) = 1 iff triangles i and j share an edge.
  std::vector<std::vector<std::uint8_t>> adjacency;

  std::size_t size() const { return triangles.size(); }
  double area(std::size_t t) const;
  double total_area() const;
  Point2 centroid(std::size_t t) const;
  bool has_edge(int a, int b) const;
  bool is_constrained(int a, int b) const;
  // Lowest-index triangle containing p (boundary inclusive), or -1.
  int locate(Point2 p) const;
  // Vertex pair shared by two adjacent triangles.
  std::array<int, 2> shared_edge(std::size_t t1, std::size_t t2) const;
};

// Throws GeometryError(Overlap) when holes overlap each other or leave the
// window, GeometryError(Degenerate) when the window is empty.
Triangulation triangulate_region(const Rect& window, std::span<const Rect> holes);

}  // namespace sharedctl
