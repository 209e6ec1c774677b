#include "hexlift/simdata.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace hexlift {

std::pair<Dataset, std::vector<int>> gen_2nc7(const SyntheticSpec& spec) {
  if (spec.n_per_cluster < 10) throw std::invalid_argument("simdata: n_per_cluster must be at least 10");
  if (!(spec.noise_sd > 0.0)) throw std::invalid_argument("simdata: noise_sd must be positive");
  if (!(spec.separation > 0.0)) throw std::invalid_argument("simdata: separation must be positive");

  const auto per = static_cast<Eigen::Index>(spec.n_per_cluster);
  Dataset data;
  data.values.resize(2 * per, 7);
  for (int j = 1; j <= 7; ++j) data.column_names.push_back("x" + std::to_string(j));
  std::vector<int> labels(static_cast<std::size_t>(2 * per));

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> noise(0.0, spec.noise_sd);

  // Cluster 0: curved sheet, parameters (u, v).
  for (Eigen::Index i = 0; i < per; ++i) {
    const double u = unit(rng), v = unit(rng);
    data.values(i, 0) = u;
    data.values(i, 1) = v;
    data.values(i, 2) = u * u;
    data.values(i, 3) = 0.3 * u * v;
    labels[static_cast<std::size_t>(i)] = 0;
  }
  // Cluster 1: curved solid, parameters (u, v, w), shifted along x1 so the
  // two x1 ranges are `separation` apart.
  const double shift = 2.0 + spec.separation;
  for (Eigen::Index i = per; i < 2 * per; ++i) {
    const double u = unit(rng), v = unit(rng), w = unit(rng);
    data.values(i, 0) = shift + u;
    data.values(i, 1) = v;
    data.values(i, 2) = 0.6 * w;
    data.values(i, 3) = 0.5 * (u * u - v * v);
    labels[static_cast<std::size_t>(i)] = 1;
  }
  for (Eigen::Index i = 0; i < 2 * per; ++i)
    for (Eigen::Index j = 4; j < 7; ++j) data.values(i, j) = noise(rng);

  return {std::move(data), std::move(labels)};
}

}  // namespace hexlift
