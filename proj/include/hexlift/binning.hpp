#pragma once

#include "hexlift/hexgrid.hpp"
#include "hexlift/types.hpp"

#include <cstddef>
#include <vector>

namespace hexlift {

/// Assignment of observations to hexagons.
struct Binning {
  std::vector<BinId> assignment;        // one bin per observation
  std::vector<std::size_t> counts;      // n_h for every bin of the grid
  std::vector<BinId> occupied;          // ascending, n_h > 0
  std::vector<double> std_counts;       // w_h = n_h / n, aligned with occupied

  std::size_t n() const { return assignment.size(); }
  std::size_t m() const { return occupied.size(); }
};

/// Rebuild counts, occupied and std_counts from an assignment over `bins` bins.
Binning make_binning(std::vector<BinId> assignment, std::size_t bins);

/// Nearest centroid of `grid` to (x, y); ties go to the lowest BinId. Only the
/// 3x3 neighbourhood around the lattice cell containing the point is searched.
/// Throws std::out_of_range when the point is not covered by any hexagon.
BinId nearest_bin(const HexGrid& grid, double x, double y);

/// u(i) = argmin_h |y_i - C_h| for every layout point.
Binning assign_bins(const ScaledLayout& layout, const HexGrid& grid);
Binning assign_bins(const Points2& points, const HexGrid& grid);

enum class CenterMode { lattice, member_mean };

/// 2-D description of every occupied bin (rows aligned with binning.occupied).
Points2 bin_centers_2d(const Binning& binning, const HexGrid& grid, const Points2& points,
                       CenterMode mode = CenterMode::lattice);

}  // namespace hexlift
