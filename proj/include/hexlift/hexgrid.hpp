#pragma once

#include "hexlift/types.hpp"

#include <cstddef>

namespace hexlift {

struct GridConfig {
  int b1 = 0;        // bins along the first axis
  double q = 0.1;    // buffer, as a proportion of the range
  double r2 = 1.0;   // range of the second axis after scaling
};

/// Pointy-top hexagon lattice. Centroid (row r, column c) sits at
/// (s1 + c*a1 + (r mod 2)*a1/2, s2 + r*a2) and has BinId r*b1 + c.
struct HexGrid {
  int b1 = 0;
  int b2 = 0;
  double a1 = 0.0;  // horizontal spacing between centroids
  double a2 = 0.0;  // vertical spacing between rows
  double s1 = 0.0;
  double s2 = 0.0;
  double q = 0.1;
  double r2 = 1.0;
  Points2 centroids;  // b x 2

  std::size_t size() const { return static_cast<std::size_t>(b1) * static_cast<std::size_t>(b2); }
  int row(BinId h) const { return static_cast<int>(h / static_cast<std::size_t>(b1)); }
  int col(BinId h) const { return static_cast<int>(h % static_cast<std::size_t>(b1)); }
  BinId id(int row, int col) const {
    return static_cast<BinId>(row) * static_cast<BinId>(b1) + static_cast<BinId>(col);
  }
  Point2 centroid(BinId h) const { return centroids.row(static_cast<Eigen::Index>(h)).transpose(); }
  /// Distance from a centroid to a hexagon vertex.
  double circumradius() const;
};

/// Number of rows needed so the lattice covers [0, 1] x [0, r2] plus buffer:
/// ceil(1 + 2[r2 + q(1 + r2)](b1 - 1) / (sqrt(3)(1 + 2q))).
int compute_b2(int b1, double q, double r2);

/// Horizontal spacing a1 = (1 + 2q) / (b1 - 1).
double binwidth(int b1, double q);

/// b1 >= 2 whose binwidth is closest to a1 (the coarser grid on ties).
int b1_for_binwidth(double a1, double q);

HexGrid build_grid(const GridConfig& config);

/// ceil(n^(1/3)), at least 2.
int default_b1(std::size_t n);

/// ceil(sqrt(n / r2)), the largest recommended b1.
int max_b1(std::size_t n, double r2);

}  // namespace hexlift
