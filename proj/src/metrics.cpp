#include "hexlift/metrics.hpp"

#include "hexlift/hexgrid.hpp"
#include "hexlift/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace hexlift {

namespace {

template <typename RowA, typename RowB>
double squared_distance(const RowA& a, const RowB& b) {
  return (a - b).squaredNorm();
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

void check_pair(const Dataset& data, const ScaledLayout& layout) {
  if (data.rows() != layout.rows())
    throw std::invalid_argument("metrics: data has " + std::to_string(data.rows()) +
                                " rows, layout has " + std::to_string(layout.rows()));
  if (data.rows() < 3) throw std::invalid_argument("metrics: need at least 3 observations");
}

}  // namespace

double random_triplet_accuracy(const Dataset& data, const ScaledLayout& layout,
                               std::size_t n_triplets, std::uint64_t seed) {
  check_pair(data, layout);
  if (n_triplets == 0) throw std::invalid_argument("metrics: n_triplets must be positive");
  const std::size_t n = data.rows();
  const Matrix& x = data.values;
  const Points2& y = layout.points;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_i(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_j(0, n - 2);
  std::uniform_int_distribution<std::size_t> pick_k(0, n - 3);

  std::size_t agree = 0;
  for (std::size_t t = 0; t < n_triplets; ++t) {
    const std::size_t i = pick_i(rng);
    std::size_t j = pick_j(rng);
    if (j >= i) ++j;
    std::size_t k = pick_k(rng);
    if (k >= std::min(i, j)) ++k;
    if (k >= std::max(i, j)) ++k;

    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j),
               kk = static_cast<Eigen::Index>(k);
    const int high = sign(squared_distance(x.row(ii), x.row(jj)) - squared_distance(x.row(ii), x.row(kk)));
    const int low = sign(squared_distance(y.row(ii), y.row(jj)) - squared_distance(y.row(ii), y.row(kk)));
    if (high == low) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(n_triplets);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t start = 0; start < order.size();) {
    std::size_t stop = start + 1;
    while (stop < order.size() && values[order[stop]] == values[order[start]]) ++stop;
    const double rank = (static_cast<double>(start + 1) + static_cast<double>(stop)) / 2.0;
    for (std::size_t k = start; k < stop; ++k) ranks[order[k]] = rank;
    start = stop;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("metrics: spearman needs two equal-length samples of size >= 2");
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    const double dx = rx[k] - mean, dy = ry[k] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("metrics: zero-variance distance vector");
  // Identical rankings: sqrt(sxx * syy) can round away from sxx for large samples.
  if (sxy == sxx && sxx == syy) return 1.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double shepard_spearman(const Dataset& data, const ScaledLayout& layout, std::size_t max_pairs,
                        std::uint64_t seed) {
  check_pair(data, layout);
  if (max_pairs == 0) throw std::invalid_argument("metrics: max_pairs must be positive");
  const std::size_t n = data.rows();
  const Matrix& x = data.values;
  const Points2& y = layout.points;

  std::vector<double> high, low;
  auto add = [&](std::size_t i, std::size_t j) {
    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
    high.push_back(std::sqrt(squared_distance(x.row(ii), x.row(jj))));
    low.push_back(std::sqrt(squared_distance(y.row(ii), y.row(jj))));
  };

  const std::size_t all_pairs = n * (n - 1) / 2;
  if (all_pairs <= max_pairs) {
    high.reserve(all_pairs);
    low.reserve(all_pairs);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) add(i, j);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_i(0, n - 1);
    std::uniform_int_distribution<std::size_t> pick_j(0, n - 2);
    high.reserve(max_pairs);
    low.reserve(max_pairs);
    for (std::size_t t = 0; t < max_pairs; ++t) {
      const std::size_t i = pick_i(rng);
      std::size_t j = pick_j(rng);
      if (j >= i) ++j;
      add(i, j);
    }
  }
  return spearman(high, low);
}

std::vector<double> min_max_normalize(std::span<const double> values, ColumnRange* range) {
  if (values.empty()) return {};
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo, max = *hi;
  if (range != nullptr) *range = {min, max};
  std::vector<double> out(values.size(), 0.0);
  if (max > min)
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = (values[k] - min) / (max - min);
  return out;
}

MetricTable build_metric_table(const std::vector<ScaledLayout>& layouts, const Dataset& data,
                               double reference_a1, const MetricOptions& options) {
  if (layouts.size() < 2)
    throw std::invalid_argument("metrics: a comparison table needs at least 2 layouts, got " +
                                std::to_string(layouts.size()));
  MetricTable table;
  table.reference_a1 = reference_a1;
  table.reference_b1 = b1_for_binwidth(reference_a1, options.q);

  const std::size_t triplets = options.n_triplets > 0 ? options.n_triplets : 10 * data.rows();
  std::vector<double> hbe, r_rta, r_sc;
  for (const ScaledLayout& layout : layouts) {
    MetricRow row;
    row.layout_id = layout.layout_id;
    row.hbe = fit_layout(data, layout, {table.reference_b1, options.q, 0.0, CenterMode::lattice}).residuals.hbe;
    row.rta = random_triplet_accuracy(data, layout, triplets, options.seed);
    row.sc = shepard_spearman(data, layout, options.max_pairs, options.seed);
    row.r_rta = 1.0 - row.rta;
    row.r_sc = 1.0 - row.sc;
    hbe.push_back(row.hbe);
    r_rta.push_back(row.r_rta);
    r_sc.push_back(row.r_sc);
    table.rows.push_back(std::move(row));
  }

  const auto hbe_n = min_max_normalize(hbe, &table.hbe_range);
  const auto rta_n = min_max_normalize(r_rta, &table.r_rta_range);
  const auto sc_n = min_max_normalize(r_sc, &table.r_sc_range);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    table.rows[k].hbe_norm = hbe_n[k];
    table.rows[k].r_rta_norm = rta_n[k];
    table.rows[k].r_sc_norm = sc_n[k];
  }
  return table;
}

}  // namespace hexlift
