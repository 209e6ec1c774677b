#pragma once

#include "hexlift/types.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace hexlift {

struct Edge {
  std::size_t from = 0;  // from < to
  std::size_t to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Triangle = std::array<std::size_t, 3>;

/// Neighbour structure over m points (indices into the input rows).
struct EdgeList {
  std::vector<Edge> edges;          // sorted, unique
  std::vector<Triangle> triangles;  // counter-clockwise, smallest index first, sorted
  bool degenerate = false;          // all points collinear: edges form a path
};

/// Delaunay triangulation of the rows of `points`.
///
/// Built by a lexicographic sweep followed by Lawson edge flips. Orientation
/// and in-circle tests are exact; cocircular configurations are resolved by a
/// symbolic perturbation ordered by (x, y, index), so the output is unique and
/// independent of input order up to relabelling.
///
/// Throws std::invalid_argument for fewer than 3 points, duplicate points or
/// non-finite coordinates. Collinear input yields the path through the sorted
/// points with `degenerate` set.
EdgeList triangulate(const Points2& points);

/// As triangulate(), but accepts m = 1 (no edges) and m = 2 (one edge).
EdgeList connect_points(const Points2& points);

}  // namespace hexlift
