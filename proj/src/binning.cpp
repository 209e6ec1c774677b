#include "hexlift/binning.hpp"

#include "hexlift/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hexlift {

Binning make_binning(std::vector<BinId> assignment, std::size_t bins) {
  Binning out;
  out.counts.assign(bins, 0);
  for (const BinId h : assignment) {
    if (h >= bins) throw std::out_of_range("binning: bin index " + std::to_string(h) + " out of range");
    ++out.counts[h];
  }
  const auto n = static_cast<double>(assignment.size());
  for (BinId h = 0; h < bins; ++h) {
    if (out.counts[h] == 0) continue;
    out.occupied.push_back(h);
    out.std_counts.push_back(static_cast<double>(out.counts[h]) / n);
  }
  out.assignment = std::move(assignment);
  return out;
}

BinId nearest_bin(const HexGrid& grid, double x, double y) {
  // A point's nearest lattice row is within one row of the rounded row, and
  // within a row the nearest column is within one of the rounded column.
  const double row_guess = std::round((y - grid.s2) / grid.a2);
  if (!std::isfinite(row_guess)) throw std::out_of_range("binning: non-finite point");
  const long r0 = static_cast<long>(row_guess);
  const long r_lo = std::max(0L, r0 - 1);
  const long r_hi = std::min(static_cast<long>(grid.b2) - 1, r0 + 1);

  BinId best = grid.size();
  double best_d2 = std::numeric_limits<double>::infinity();
  for (long r = r_lo; r <= r_hi; ++r) {
    const double offset = (r % 2) * grid.a1 / 2.0;
    const long c0 = static_cast<long>(std::round((x - grid.s1 - offset) / grid.a1));
    const long c_lo = std::max(0L, c0 - 1);
    const long c_hi = std::min(static_cast<long>(grid.b1) - 1, c0 + 1);
    for (long c = c_lo; c <= c_hi; ++c) {
      const BinId h = grid.id(static_cast<int>(r), static_cast<int>(c));
      const double dx = x - grid.centroids(static_cast<Eigen::Index>(h), 0);
      const double dy = y - grid.centroids(static_cast<Eigen::Index>(h), 1);
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2 || (d2 == best_d2 && h < best)) {
        best_d2 = d2;
        best = h;
      }
    }
  }
  const double reach = grid.circumradius() * (1.0 + 1e-9);
  if (best == grid.size() || best_d2 > reach * reach)
    throw std::out_of_range("outside grid coverage");
  return best;
}

Binning assign_bins(const Points2& points, const HexGrid& grid) {
  const auto n = static_cast<std::size_t>(points.rows());
  std::vector<BinId> assignment(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      try {
        assignment[i] = nearest_bin(grid, points(row, 0), points(row, 1));
      } catch (const std::out_of_range&) {
        throw std::out_of_range("binning: point at row " + std::to_string(i) +
                                " lies outside the grid coverage");
      }
    }
  });
  return make_binning(std::move(assignment), grid.size());
}

Binning assign_bins(const ScaledLayout& layout, const HexGrid& grid) {
  return assign_bins(layout.points, grid);
}

Points2 bin_centers_2d(const Binning& binning, const HexGrid& grid, const Points2& points,
                       CenterMode mode) {
  const auto m = static_cast<Eigen::Index>(binning.m());
  Points2 centers(m, 2);
  if (mode == CenterMode::lattice) {
    for (Eigen::Index k = 0; k < m; ++k)
      centers.row(k) = grid.centroids.row(static_cast<Eigen::Index>(binning.occupied[static_cast<std::size_t>(k)]));
    return centers;
  }

  if (static_cast<std::size_t>(points.rows()) != binning.n())
    throw std::invalid_argument("binning: point count does not match the assignment");
  std::vector<Eigen::Index> slot(grid.size(), -1);
  for (Eigen::Index k = 0; k < m; ++k) slot[binning.occupied[static_cast<std::size_t>(k)]] = k;
  centers.setZero();
  for (std::size_t i = 0; i < binning.n(); ++i)
    centers.row(slot[binning.assignment[i]]) += points.row(static_cast<Eigen::Index>(i));
  for (Eigen::Index k = 0; k < m; ++k)
    centers.row(k) /= static_cast<double>(binning.counts[binning.occupied[static_cast<std::size_t>(k)]]);
  return centers;
}

}  // namespace hexlift
