#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace hexlift {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Point2 = Eigen::Vector2d;
using Points2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Index of a hexagon in the full b1*b2 grid (row-major, bottom row first).
using BinId = std::size_t;

/// The p-D observations. Row order is the join key with every layout.
struct Dataset {
  Matrix values;
  std::vector<std::string> column_names;

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

/// Throws std::invalid_argument unless values are finite, n >= 3, p >= 2
/// and column names are unique with one per column.
void validate_dataset(const Dataset& data);

/// A 2-D embedding straight out of an NLDR method, in arbitrary units.
struct RawLayout {
  Points2 points;
  std::string layout_id;
};

/// A layout mapped onto [0, 1] x [0, r2].
struct ScaledLayout {
  Points2 points;
  std::string layout_id;
  double r2 = 1.0;
  bool preserve_ratio = true;
  bool swapped = false;  // axes were exchanged so the wider one comes first

  std::size_t rows() const { return static_cast<std::size_t>(points.rows()); }
};

}  // namespace hexlift
