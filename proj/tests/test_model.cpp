#include <catch2/catch_amalgamated.hpp>

#include "hexlift/diagnostics.hpp"
#include "hexlift/pipeline.hpp"
#include "hexlift/scaling.hpp"
#include "hexlift/simdata.hpp"
#include "oracles.hpp"

#include <random>

using namespace hexlift;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Dataset gaussian_data(std::size_t n, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Dataset d;
  d.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < d.values.rows(); ++i)
    for (Eigen::Index j = 0; j < d.values.cols(); ++j) d.values(i, j) = g(rng);
  for (std::size_t j = 0; j < p; ++j) d.column_names.push_back("v" + std::to_string(j));
  return d;
}

ScaledLayout random_layout(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u;
  RawLayout raw{Points2(static_cast<Eigen::Index>(n), 2), "rand"};
  for (Eigen::Index i = 0; i < raw.points.rows(); ++i) raw.points.row(i) << u(rng), u(rng);
  return scale_layout(raw);
}

}  // namespace

TEST_CASE("lifted centroids are member means") {
  const Dataset data = gaussian_data(300, 4, 1);
  const ScaledLayout layout = random_layout(300, 2);
  const Fit fit = fit_layout(data, layout, {6});
  REQUIRE(fit.model.size() == fit.binning.m());
  std::size_t total = 0;
  for (std::size_t k = 0; k < fit.model.size(); ++k) {
    const BinId h = fit.model.bin_ids[k];
    Vector mean = Vector::Zero(4);
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.rows(); ++i)
      if (fit.binning.assignment[i] == h) {
        mean += data.values.row(static_cast<Eigen::Index>(i)).transpose();
        ++count;
      }
    mean /= static_cast<double>(count);
    CHECK(count == fit.model.counts[k]);
    CHECK((mean - fit.model.centroids_pd.row(static_cast<Eigen::Index>(k)).transpose()).norm() < 1e-12);
    CHECK(fit.model.weights[k] == static_cast<double>(count) / 300.0);
    total += count;
  }
  CHECK(total == 300);
  CHECK(fit.model.row_of(fit.model.bin_ids.back()) == fit.model.size() - 1);
  CHECK(fit.model.row_of(fit.grid.size() + 5) == fit.model.size());
}

TEST_CASE("HBE matches the triple-sum definition") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Dataset data = gaussian_data(400, 3 + seed, seed);
    const ScaledLayout layout = random_layout(400, seed + 10);
    const Fit fit = fit_layout(data, layout, {static_cast<int>(4 + seed)});
    const double expected = oracle::triple_sum_hbe(data.values, fit.binning.assignment);
    CHECK_THAT(fit.residuals.hbe, WithinRel(expected, 1e-12));
    for (std::size_t i = 0; i < data.rows(); ++i) {
      const auto row = static_cast<Eigen::Index>(fit.model.row_of(fit.binning.assignment[i]));
      const double d = (data.values.row(static_cast<Eigen::Index>(i)) - fit.model.centroids_pd.row(row)).norm();
      REQUIRE_THAT(fit.residuals.e(static_cast<Eigen::Index>(i)), WithinAbs(d, 1e-12));
    }
  }
}

TEST_CASE("HBE extremes") {
  // One observation per bin: every residual vanishes.
  Dataset data = gaussian_data(4, 3, 3);
  RawLayout raw{Points2(4, 2), "corners"};
  raw.points << 0, 0, 1, 0, 0, 1, 1, 1;
  const Fit single = fit_layout(data, scale_layout(raw), {5});
  CHECK(single.model.size() == 4);
  CHECK(single.residuals.hbe <= 1e-12);

  // One bin: HBE is the RMS distance to the grand mean.
  data = gaussian_data(50, 5, 4);
  Binning one = make_binning(std::vector<BinId>(50, 0), 1);
  LiftedModel model = lift(one, data, Points2::Zero(1, 2));
  const ResidualSet res = residuals(data, model, one);
  const Vector mean = data.values.colwise().mean();
  double s = 0;
  for (Eigen::Index i = 0; i < 50; ++i) s += (data.values.row(i).transpose() - mean).squaredNorm();
  CHECK_THAT(res.hbe, WithinRel(std::sqrt(s / 50), 1e-10));
}

TEST_CASE("pairwise summation") {
  std::vector<double> v(1000, 0.1);
  CHECK_THAT(pairwise_sum(v), WithinAbs(100.0, 1e-12));
  CHECK(pairwise_sum({}) == 0.0);
  std::vector<double> ints(777);
  for (std::size_t k = 0; k < ints.size(); ++k) ints[k] = static_cast<double>(k);
  CHECK(pairwise_sum(ints) == 777.0 * 776.0 / 2);
}

TEST_CASE("low-count removal") {
  const Dataset data = gaussian_data(200, 3, 9);
  const ScaledLayout layout = random_layout(200, 19);
  const Fit full = fit_layout(data, layout, {8});
  const double cutoff = 0.006;  // drops bins with a single member
  const Fit trimmed = fit_layout(data, layout, {8, 0.1, cutoff});
  for (const double w : trimmed.model.weights) CHECK(w > cutoff);
  std::size_t dropped = 0;
  for (const double w : full.model.weights) dropped += w <= cutoff;
  CHECK(trimmed.model.size() == full.model.size() - dropped);
  CHECK(trimmed.model.cutoff == cutoff);

  // Orphans sit with the nearest surviving 2-D centre.
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const BinId before = full.binning.assignment[i];
    const BinId after = trimmed.binning.assignment[i];
    if (trimmed.model.row_of(before) < trimmed.model.size()) {
      CHECK(after == before);
      continue;
    }
    const Point2 y = layout.points.row(static_cast<Eigen::Index>(i)).transpose();
    const auto got = static_cast<Eigen::Index>(trimmed.model.row_of(after));
    const double d = (trimmed.model.centroids2d.row(got).transpose() - y).squaredNorm();
    for (Eigen::Index k = 0; k < trimmed.model.centroids2d.rows(); ++k)
      CHECK(d <= (trimmed.model.centroids2d.row(k).transpose() - y).squaredNorm());
  }
  CHECK_THAT(trimmed.residuals.hbe,
             WithinRel(oracle::triple_sum_hbe(data.values, trimmed.binning.assignment), 1e-12));

  CHECK_THROWS_AS(fit_layout(data, layout, {8, 0.1, -0.1}), std::invalid_argument);
  CHECK_THROWS_WITH(fit_layout(data, layout, {8, 0.1, 1.0}), Catch::Matchers::ContainsSubstring("every bin"));
}

TEST_CASE("prediction returns the 2-D centre of the nearest p-D centroid") {
  const auto [data, labels] = gen_2nc7({200, 0.05, 1.0, 3});
  RawLayout raw{data.values.leftCols(2), "truth"};
  const Fit fit = fit_layout(data, scale_layout(raw));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    Vector x(7);
    for (Eigen::Index j = 0; j < 7; ++j) x(j) = 2 * g(rng);
    const Point2 y = predict_2d(x, fit.model);
    std::size_t best = 0;
    for (std::size_t k = 1; k < fit.model.size(); ++k)
      if ((fit.model.centroids_pd.row(static_cast<Eigen::Index>(k)).transpose() - x).squaredNorm() <
          (fit.model.centroids_pd.row(static_cast<Eigen::Index>(best)).transpose() - x).squaredNorm())
        best = k;
    CHECK(y == fit.model.centroids2d.row(static_cast<Eigen::Index>(best)).transpose());
  }
  CHECK_THROWS_AS(predict_2d(Vector::Zero(3), fit.model), std::invalid_argument);
  Vector bad = Vector::Zero(7);
  bad(2) = NAN;
  CHECK_THROWS_AS(predict_2d(bad, fit.model), std::invalid_argument);
}

TEST_CASE("fit checks row counts") {
  const Dataset data = gaussian_data(30, 3, 1);
  const ScaledLayout layout = random_layout(31, 1);
  CHECK_THROWS_WITH(fit_layout(data, layout), Catch::Matchers::ContainsSubstring("30") &&
                                                  Catch::Matchers::ContainsSubstring("31"));
}
