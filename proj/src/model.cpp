#include "hexlift/model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace hexlift {

std::size_t LiftedModel::row_of(BinId bin) const {
  const auto it = std::lower_bound(bin_ids.begin(), bin_ids.end(), bin);
  if (it == bin_ids.end() || *it != bin) return size();
  return static_cast<std::size_t>(it - bin_ids.begin());
}

namespace {

// Column means of the member rows of each occupied bin (rows follow `bins`).
Matrix member_means(const std::vector<BinId>& bins, const std::vector<BinId>& assignment,
                    const std::vector<std::size_t>& counts, const Dataset& data) {
  std::vector<Eigen::Index> slot(bins.empty() ? 0 : bins.back() + 1, -1);
  for (std::size_t k = 0; k < bins.size(); ++k) slot[bins[k]] = static_cast<Eigen::Index>(k);

  Matrix sums = Matrix::Zero(static_cast<Eigen::Index>(bins.size()), data.values.cols());
  for (std::size_t i = 0; i < assignment.size(); ++i)
    sums.row(slot[assignment[i]]) += data.values.row(static_cast<Eigen::Index>(i));
  for (std::size_t k = 0; k < bins.size(); ++k)
    sums.row(static_cast<Eigen::Index>(k)) /= static_cast<double>(counts[bins[k]]);
  return sums;
}

}  // namespace

LiftedModel lift(const Binning& binning, const Dataset& data, const Points2& centers2d) {
  if (binning.m() == 0) throw std::invalid_argument("model-lift: empty binning");
  if (binning.n() != data.rows())
    throw std::invalid_argument("model-lift: binning has " + std::to_string(binning.n()) +
                                " observations but the data has " + std::to_string(data.rows()));
  if (static_cast<std::size_t>(centers2d.rows()) != binning.m())
    throw std::invalid_argument("model-lift: expected one 2-D centre per occupied bin");

  LiftedModel model;
  model.bin_ids = binning.occupied;
  model.centroids2d = centers2d;
  model.centroids_pd = member_means(binning.occupied, binning.assignment, binning.counts, data);
  model.weights = binning.std_counts;
  for (const BinId h : binning.occupied) model.counts.push_back(binning.counts[h]);
  model.edges = connect_points(centers2d);
  return model;
}

std::pair<LiftedModel, Binning> remove_low_count(const LiftedModel& model, const Binning& binning,
                                                 const Points2& layout, const Dataset& data,
                                                 double cutoff) {
  if (!(cutoff >= 0.0)) throw std::invalid_argument("model-lift: cutoff must be non-negative");
  if (cutoff == 0.0) return {model, binning};
  if (static_cast<std::size_t>(layout.rows()) != binning.n() || data.rows() != binning.n())
    throw std::invalid_argument("model-lift: layout, data and binning sizes differ");

  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < model.size(); ++k)
    if (model.weights[k] > cutoff) keep.push_back(k);
  if (keep.empty())
    throw std::invalid_argument("model-lift: cutoff " + std::to_string(cutoff) + " removes every bin");
  if (keep.size() == model.size()) {
    LiftedModel same = model;
    same.cutoff = cutoff;
    return {same, binning};
  }

  std::vector<bool> survives(binning.counts.size(), false);
  for (const std::size_t k : keep) survives[model.bin_ids[k]] = true;

  std::vector<BinId> assignment = binning.assignment;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (survives[assignment[i]]) continue;
    const auto r = static_cast<Eigen::Index>(i);
    double best = std::numeric_limits<double>::infinity();
    BinId target = 0;
    for (const std::size_t k : keep) {  // ascending BinId, so ties keep the lowest
      const double dx = layout(r, 0) - model.centroids2d(static_cast<Eigen::Index>(k), 0);
      const double dy = layout(r, 1) - model.centroids2d(static_cast<Eigen::Index>(k), 1);
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        target = model.bin_ids[k];
      }
    }
    assignment[i] = target;
  }

  Binning updated = make_binning(std::move(assignment), binning.counts.size());
  Points2 centers(static_cast<Eigen::Index>(keep.size()), 2);
  for (std::size_t j = 0; j < keep.size(); ++j)
    centers.row(static_cast<Eigen::Index>(j)) = model.centroids2d.row(static_cast<Eigen::Index>(keep[j]));

  LiftedModel out = lift(updated, data, centers);
  out.cutoff = cutoff;
  return {std::move(out), std::move(updated)};
}

}  // namespace hexlift
