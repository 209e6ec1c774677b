#include "hexlift/diagnostics.hpp"

#include "hexlift/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hexlift {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double total = 0.0;
    for (const double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ResidualSet residuals(const Dataset& data, const LiftedModel& model, const Binning& binning) {
  if (binning.n() != data.rows())
    throw std::invalid_argument("diagnostics: binning has " + std::to_string(binning.n()) +
                                " rows, data has " + std::to_string(data.rows()));
  if (model.centroids_pd.cols() != data.values.cols())
    throw std::invalid_argument("diagnostics: model has " + std::to_string(model.centroids_pd.cols()) +
                                " dimensions, data has " + std::to_string(data.cols()));

  const std::size_t n = data.rows();
  ResidualSet out;
  out.e.resize(static_cast<Eigen::Index>(n));
  out.bin = binning.assignment;
  std::vector<double> squared(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t row = model.row_of(binning.assignment[i]);
      if (row == model.size())
        throw std::invalid_argument("diagnostics: observation " + std::to_string(i) +
                                    " is assigned to a bin missing from the model");
      double s = 0.0;
      for (Eigen::Index j = 0; j < data.values.cols(); ++j) {
        const double d = data.values(static_cast<Eigen::Index>(i), j) -
                         model.centroids_pd(static_cast<Eigen::Index>(row), j);
        s += d * d;
      }
      squared[i] = s;
      out.e(static_cast<Eigen::Index>(i)) = std::sqrt(s);
    }
  });
  out.hbe = std::sqrt(pairwise_sum(squared) / static_cast<double>(n));
  return out;
}

std::size_t nearest_model_row(const Vector& x, const LiftedModel& model) {
  if (model.size() == 0) throw std::invalid_argument("diagnostics: model has no bins");
  if (x.size() != model.centroids_pd.cols())
    throw std::invalid_argument("diagnostics: query has " + std::to_string(x.size()) +
                                " values, model expects " + std::to_string(model.centroids_pd.cols()));
  if (!x.allFinite()) throw std::invalid_argument("diagnostics: query contains non-finite values");

  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < model.size(); ++k) {  // bin_ids ascending: first minimum wins ties
    double s = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double d = x(j) - model.centroids_pd(static_cast<Eigen::Index>(k), j);
      s += d * d;
    }
    if (s < best_d2) {
      best_d2 = s;
      best = k;
    }
  }
  return best;
}

Point2 predict_2d(const Vector& x, const LiftedModel& model) {
  return model.centroids2d.row(static_cast<Eigen::Index>(nearest_model_row(x, model))).transpose();
}

}  // namespace hexlift
