#include "hexlift/pipeline.hpp"

#include <stdexcept>
#include <string>

namespace hexlift {

Fit fit_layout(const Dataset& data, const ScaledLayout& layout, const FitOptions& options) {
  if (data.rows() != layout.rows())
    throw std::invalid_argument("fit: data has " + std::to_string(data.rows()) + " rows but layout '" +
                                layout.layout_id + "' has " + std::to_string(layout.rows()));
  Fit fit;
  const int b1 = options.b1 > 0 ? options.b1 : default_b1(data.rows());
  fit.grid = build_grid({b1, options.q, layout.r2});
  const Binning binning = assign_bins(layout, fit.grid);
  const Points2 centers = bin_centers_2d(binning, fit.grid, layout.points, options.centers);
  const LiftedModel model = lift(binning, data, centers);
  auto [trimmed, membership] = remove_low_count(model, binning, layout.points, data, options.cutoff);
  fit.model = std::move(trimmed);
  fit.binning = std::move(membership);
  fit.residuals = residuals(data, fit.model, fit.binning);
  return fit;
}

}  // namespace hexlift
