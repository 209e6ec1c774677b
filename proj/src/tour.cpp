#include "hexlift/tour.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace hexlift {

namespace {

void orthonormalize(Matrix& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    basis.col(0).normalize();
    basis.col(1) -= basis.col(0).dot(basis.col(1)) * basis.col(0);
    basis.col(1).normalize();
  }
}

void check_basis(const Matrix& basis, const char* what) {
  if (basis.cols() != 2 || basis.rows() < 2)
    throw std::invalid_argument(std::string("tour: ") + what + " must be a p x 2 matrix with p >= 2");
}

}  // namespace

ProjectionBasis random_basis(int p, std::uint64_t seed) {
  if (p < 2) throw std::invalid_argument("tour: projection needs p >= 2, got " + std::to_string(p));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix basis(p, 2);
  for (;;) {
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < p; ++i) basis(i, j) = gauss(rng);
    // Redraw the (probability zero) near-parallel pair.
    const double c = std::abs(basis.col(0).normalized().dot(basis.col(1).normalized()));
    if (c < 0.999) break;
  }
  orthonormalize(basis);
  return {std::move(basis), "seed:" + std::to_string(seed)};
}

Vector principal_angles(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("tour: bases have different dimensions");
  Matrix qa = a, qb = b;
  orthonormalize(qa);
  orthonormalize(qb);
  const Eigen::JacobiSVD<Matrix> svd(qa.transpose() * qb);
  Vector angles = svd.singularValues().unaryExpr([](double s) { return std::acos(std::clamp(s, -1.0, 1.0)); });
  std::sort(angles.data(), angles.data() + angles.size());
  return angles;
}

TourPath geodesic_path(const ProjectionBasis& start, const ProjectionBasis& end, int steps) {
  check_basis(start.basis, "start basis");
  check_basis(end.basis, "end basis");
  if (start.basis.rows() != end.basis.rows())
    throw std::invalid_argument("tour: start has p = " + std::to_string(start.basis.rows()) +
                                ", end has p = " + std::to_string(end.basis.rows()));
  if (steps < 1) throw std::invalid_argument("tour: steps must be at least 1");

  // Align both planes along their principal directions.
  const Eigen::JacobiSVD<Matrix> svd(start.basis.transpose() * end.basis, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix from = start.basis * svd.matrixU();
  const Matrix to = end.basis * svd.matrixV();
  Vector theta(2);
  Matrix towards(from.rows(), 2);
  for (int i = 0; i < 2; ++i) {
    theta(i) = std::acos(std::clamp(svd.singularValues()(i), -1.0, 1.0));
    Vector away = to.col(i) - from.col(i).dot(to.col(i)) * from.col(i);
    const double norm = away.norm();
    if (theta(i) < 1e-12 || norm < 1e-12) {
      theta(i) = 0.0;
      towards.col(i).setZero();
    } else {
      towards.col(i) = away / norm;
    }
  }

  TourPath path;
  path.steps_per_segment = steps;
  path.frames.push_back(start);
  for (int k = 1; k < steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    Matrix frame(from.rows(), 2);
    for (int i = 0; i < 2; ++i)
      frame.col(i) = std::cos(t * theta(i)) * from.col(i) + std::sin(t * theta(i)) * towards.col(i);
    orthonormalize(frame);
    path.frames.push_back({std::move(frame), start.tag + "->" + end.tag + "@" + std::to_string(k)});
  }
  path.frames.push_back(end);
  return path;
}

Points2 project(const Matrix& data, const ProjectionBasis& basis) {
  check_basis(basis.basis, "basis");
  if (data.cols() != basis.basis.rows())
    throw std::invalid_argument("tour: data has " + std::to_string(data.cols()) + " columns, basis expects " +
                                std::to_string(basis.basis.rows()));
  return data * basis.basis;
}

std::vector<ProjectionBasis> tour_anchors(int p, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("tour: need at least one frame");
  std::vector<ProjectionBasis> out;
  for (int k = 0; k < count; ++k) out.push_back(random_basis(p, seed + static_cast<std::uint64_t>(k)));
  return out;
}

}  // namespace hexlift
