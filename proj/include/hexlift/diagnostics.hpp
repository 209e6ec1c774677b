#pragma once

#include "hexlift/binning.hpp"
#include "hexlift/model.hpp"
#include "hexlift/types.hpp"

#include <span>

namespace hexlift {

struct ResidualSet {
  Vector e;            // p-D distance of each observation to its bin centroid
  std::vector<BinId> bin;  // bin of each observation
  double hbe = 0.0;    // sqrt(mean(e^2))
};

/// Residuals against the lifted model and the hexbin error.
ResidualSet residuals(const Dataset& data, const LiftedModel& model, const Binning& binning);

/// 2-D centre of the bin whose p-D centroid is nearest to x (lowest BinId on ties).
Point2 predict_2d(const Vector& x, const LiftedModel& model);

/// Row index into the model of the p-D nearest centroid.
std::size_t nearest_model_row(const Vector& x, const LiftedModel& model);

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace hexlift
