#include "hexlift/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace hexlift {

void validate_dataset(const Dataset& data) {
  if (data.rows() < 3) throw std::invalid_argument("dataset: need at least 3 rows");
  if (data.cols() < 2) throw std::invalid_argument("dataset: need at least 2 columns");
  if (data.column_names.size() != data.cols())
    throw std::invalid_argument("dataset: column name count does not match column count");
  std::unordered_set<std::string> seen;
  for (const auto& name : data.column_names)
    if (!seen.insert(name).second) throw std::invalid_argument("dataset: duplicate column name '" + name + "'");
  for (Eigen::Index i = 0; i < data.values.rows(); ++i)
    for (Eigen::Index j = 0; j < data.values.cols(); ++j)
      if (!std::isfinite(data.values(i, j)))
        throw std::invalid_argument("dataset: non-finite value at row " + std::to_string(i) +
                                    ", column " + std::to_string(j));
}

void validate_layout(const RawLayout& raw) {
  if (raw.points.rows() < 3) throw std::invalid_argument("layout '" + raw.layout_id + "': need at least 3 points");
  for (Eigen::Index i = 0; i < raw.points.rows(); ++i)
    for (int j = 0; j < 2; ++j)
      if (!std::isfinite(raw.points(i, j)))
        throw std::invalid_argument("layout '" + raw.layout_id + "': non-finite value at row " +
                                    std::to_string(i) + ", column " + std::to_string(j + 1));
  for (int j = 0; j < 2; ++j)
    if (raw.points.col(j).maxCoeff() == raw.points.col(j).minCoeff())
      throw std::invalid_argument("layout '" + raw.layout_id + "': column " + std::to_string(j + 1) +
                                  " has zero range");
}

ScaledLayout scale_layout(const RawLayout& raw, bool preserve_ratio) {
  validate_layout(raw);

  ScaledLayout out;
  out.layout_id = raw.layout_id;
  out.preserve_ratio = preserve_ratio;
  out.points = raw.points;

  double min1 = out.points.col(0).minCoeff();
  double range1 = out.points.col(0).maxCoeff() - min1;
  double min2 = out.points.col(1).minCoeff();
  double range2 = out.points.col(1).maxCoeff() - min2;
  if (range2 > range1) {
    out.points.col(0).swap(out.points.col(1));
    std::swap(min1, min2);
    std::swap(range1, range2);
    out.swapped = true;
  }

  const double divisor2 = preserve_ratio ? range1 : range2;
  for (Eigen::Index i = 0; i < out.points.rows(); ++i) {
    out.points(i, 0) = (out.points(i, 0) - min1) / range1;
    out.points(i, 1) = (out.points(i, 1) - min2) / divisor2;
  }
  out.r2 = preserve_ratio ? range2 / range1 : 1.0;
  return out;
}

}  // namespace hexlift
