#pragma once

#include "hexlift/pipeline.hpp"
#include "hexlift/types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hexlift {

struct TuningRecord {
  std::string layout_id;
  int b1 = 0;
  int b2 = 0;
  std::size_t b = 0;
  std::size_t m = 0;
  double a1 = 0.0;
  double mean_count = 0.0;      // sum n_h / m
  double mean_std_count = 0.0;  // sum w_h / m
  double nonempty_frac = 0.0;   // m / b
  double cutoff = 0.0;
  double hbe = 0.0;
};

TuningRecord make_record(const std::string& layout_id, const Fit& fit);

/// Up to `points` log-spaced integers across [2, max_b1(n, r2)], deduplicated.
std::vector<int> default_b1_grid(std::size_t n, double r2, int points = 12);

std::vector<double> default_cutoff_grid();

/// One record per distinct b1, sorted by a1 (then cutoff). Throws
/// std::invalid_argument listing every b1 outside [2, max_b1(n, r2)].
std::vector<TuningRecord> sweep_b1(const Dataset& data, const ScaledLayout& layout,
                                   std::span<const int> b1_values, double cutoff = 0.0,
                                   double q = 0.1);

/// Cartesian product b1 x cutoff. Cutoffs must be ascending and each below
/// the largest w_h of every grid.
std::vector<TuningRecord> sweep_cutoff(const Dataset& data, const ScaledLayout& layout,
                                       std::span<const int> b1_values,
                                       std::span<const double> cutoffs, double q = 0.1);

}  // namespace hexlift
