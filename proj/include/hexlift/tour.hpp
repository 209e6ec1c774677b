#pragma once

#include "hexlift/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hexlift {

/// p x 2 matrix with orthonormal columns.
struct ProjectionBasis {
  Matrix basis;
  std::string tag;
};

struct TourPath {
  std::vector<ProjectionBasis> frames;
  int steps_per_segment = 1;
};

ProjectionBasis random_basis(int p, std::uint64_t seed);

/// steps + 1 frames moving along the geodesic between the planes spanned by
/// start and end; the first and last frames are start and end themselves.
TourPath geodesic_path(const ProjectionBasis& start, const ProjectionBasis& end, int steps);

/// Principal angles (ascending) between the planes spanned by two bases.
Vector principal_angles(const Matrix& a, const Matrix& b);

/// rows(data) x 2 projection.
Points2 project(const Matrix& data, const ProjectionBasis& basis);

/// `count` seeded random bases: the anchor frames of a tour.
std::vector<ProjectionBasis> tour_anchors(int p, int count, std::uint64_t seed);

}  // namespace hexlift
