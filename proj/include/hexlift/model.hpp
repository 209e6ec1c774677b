#pragma once

#include "hexlift/binning.hpp"
#include "hexlift/hexgrid.hpp"
#include "hexlift/triangulation.hpp"
#include "hexlift/types.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace hexlift {

/// The wireframe: surviving bins described in 2-D and in the data space, joined
/// by the Delaunay edges of their 2-D centres.
struct LiftedModel {
  std::vector<BinId> bin_ids;         // ascending
  Points2 centroids2d;                // m' x 2
  Matrix centroids_pd;                // m' x p, mean of member observations
  std::vector<std::size_t> counts;    // n_h
  std::vector<double> weights;        // w_h = n_h / n
  EdgeList edges;                     // indices are rows of the matrices above
  double cutoff = 0.0;

  std::size_t size() const { return bin_ids.size(); }
  /// Row of `bin` in the model, or size() if it did not survive.
  std::size_t row_of(BinId bin) const;
};

/// centroids_pd[h] = mean of the observations assigned to occupied bin h;
/// edges = Delaunay triangulation of centers2d.
LiftedModel lift(const Binning& binning, const Dataset& data, const Points2& centers2d);

/// Drop bins with w_h <= cutoff. Their observations move to the nearest
/// surviving 2-D centre (ties to the lowest BinId), p-D means are recomputed
/// and the survivors re-triangulated. cutoff = 0 returns the inputs unchanged.
std::pair<LiftedModel, Binning> remove_low_count(const LiftedModel& model, const Binning& binning,
                                                 const Points2& layout, const Dataset& data,
                                                 double cutoff);

}  // namespace hexlift
