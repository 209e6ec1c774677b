#pragma once

#include "hexlift/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hexlift {

struct SyntheticSpec {
  int n_per_cluster = 1000;
  double noise_sd = 0.05;
  double separation = 1.0;  // gap along x1 between the two clusters
  std::uint64_t seed = 1;
};

/// Two separated nonlinear clusters in 7-D. Cluster 0 is a curved 2-D sheet,
/// cluster 1 a curved 3-D solid; both live in x1..x4 and x5..x7 are Gaussian
/// noise. Labels are 0 / 1, cluster 0 first.
std::pair<Dataset, std::vector<int>> gen_2nc7(const SyntheticSpec& spec = {});

}  // namespace hexlift
