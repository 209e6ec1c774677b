#include "hexlift/hexgrid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hexlift {

namespace {

void check_params(int b1, double q, double r2) {
  if (b1 < 2) throw std::invalid_argument("hexgrid: b1 must be at least 2, got " + std::to_string(b1));
  if (!(q > 0.0 && q < 0.5)) throw std::invalid_argument("hexgrid: buffer q must lie in (0, 0.5)");
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw std::invalid_argument("hexgrid: r2 must be positive");
}

}  // namespace

double HexGrid::circumradius() const { return a1 / std::sqrt(3.0); }

int compute_b2(int b1, double q, double r2) {
  check_params(b1, q, r2);
  const double rows =
      1.0 + 2.0 * (r2 + q * (1.0 + r2)) * (b1 - 1) / (std::sqrt(3.0) * (1.0 + 2.0 * q));
  return static_cast<int>(std::ceil(rows));
}

double binwidth(int b1, double q) {
  if (b1 < 2) throw std::invalid_argument("hexgrid: b1 must be at least 2, got " + std::to_string(b1));
  return (1.0 + 2.0 * q) / (b1 - 1);
}

int b1_for_binwidth(double a1, double q) {
  if (!(a1 > 0.0) || !std::isfinite(a1)) throw std::invalid_argument("hexgrid: binwidth must be positive");
  // binwidth() decreases in b1; bracket a1 then take the closer side.
  int b1 = 2;
  const double guess = std::floor((1.0 + 2.0 * q) / a1);
  if (guess > 2.0) b1 = static_cast<int>(std::min(guess, 1e9));
  while (b1 > 2 && binwidth(b1, q) < a1) --b1;
  while (binwidth(b1 + 1, q) >= a1) ++b1;
  // Now binwidth(b1) >= a1 > binwidth(b1 + 1), or b1 == 2 with a1 above the range.
  if (binwidth(b1, q) <= a1) return b1;
  const double above = binwidth(b1, q) - a1;
  const double below = a1 - binwidth(b1 + 1, q);
  return below < above ? b1 + 1 : b1;
}

HexGrid build_grid(const GridConfig& config) {
  HexGrid grid;
  grid.b1 = config.b1;
  grid.b2 = compute_b2(config.b1, config.q, config.r2);
  grid.q = config.q;
  grid.r2 = config.r2;
  grid.a1 = binwidth(config.b1, config.q);
  grid.a2 = std::sqrt(3.0) * grid.a1 / 2.0;
  grid.s1 = -config.q;
  grid.s2 = -config.q * config.r2;

  grid.centroids.resize(static_cast<Eigen::Index>(grid.size()), 2);
  for (int r = 0; r < grid.b2; ++r) {
    const double offset = (r % 2) * grid.a1 / 2.0;
    for (int c = 0; c < grid.b1; ++c) {
      const auto h = static_cast<Eigen::Index>(grid.id(r, c));
      grid.centroids(h, 0) = grid.s1 + c * grid.a1 + offset;
      grid.centroids(h, 1) = grid.s2 + r * grid.a2;
    }
  }
  return grid;
}

int default_b1(std::size_t n) {
  auto k = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n))));
  while (k > 1 && (k - 1) * (k - 1) * (k - 1) >= n) --k;
  while (k * k * k < n) ++k;
  return std::max(2, static_cast<int>(k));
}

int max_b1(std::size_t n, double r2) {
  if (!(r2 > 0.0)) throw std::invalid_argument("hexgrid: r2 must be positive");
  return std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n) / r2))));
}

}  // namespace hexlift
