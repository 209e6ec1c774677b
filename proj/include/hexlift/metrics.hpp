#pragma once

#include "hexlift/types.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hexlift {

/// Fraction of sampled triplets (i; j, k) whose p-D distance order
/// d(i, j) vs d(i, k) matches the 2-D order. i is uniform, then j and k are
/// uniform distinct indices different from i.
double random_triplet_accuracy(const Dataset& data, const ScaledLayout& layout,
                               std::size_t n_triplets, std::uint64_t seed);

/// Spearman correlation between p-D and 2-D pairwise distances. All pairs are
/// used when n(n-1)/2 <= max_pairs, otherwise max_pairs pairs are sampled.
double shepard_spearman(const Dataset& data, const ScaledLayout& layout, std::size_t max_pairs,
                        std::uint64_t seed);

/// Ranks starting at 1, ties receive their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of the average ranks. Throws std::domain_error when
/// either input has zero variance.
double spearman(std::span<const double> x, std::span<const double> y);

struct MetricOptions {
  double q = 0.1;
  std::size_t n_triplets = 0;  // 0 means 10 * n
  std::size_t max_pairs = 200000;
  std::uint64_t seed = 1;
};

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;
};

/// One layout's scores. Every r_* and normalised column reads lower = better.
struct MetricRow {
  std::string layout_id;
  double hbe = 0.0;
  double rta = 0.0;
  double sc = 0.0;
  double r_rta = 0.0;  // 1 - rta
  double r_sc = 0.0;   // 1 - sc
  double hbe_norm = 0.0;
  double r_rta_norm = 0.0;
  double r_sc_norm = 0.0;
};

struct MetricTable {
  std::vector<MetricRow> rows;
  double reference_a1 = 0.0;
  int reference_b1 = 0;
  ColumnRange hbe_range;
  ColumnRange r_rta_range;
  ColumnRange r_sc_range;
};

/// Min-max scaling onto [0, 1]; a constant column maps to 0.
std::vector<double> min_max_normalize(std::span<const double> values, ColumnRange* range = nullptr);

/// HBE at the grid whose binwidth is closest to reference_a1, plus
/// RTA and SC, normalised across at least two layouts.
MetricTable build_metric_table(const std::vector<ScaledLayout>& layouts, const Dataset& data,
                               double reference_a1, const MetricOptions& options = {});

}  // namespace hexlift
