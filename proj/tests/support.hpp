#pragma once

// Dense reference pieces assembled directly from the stage equations, kept
// apart from the library's own oracle so the two can disagree.

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "nlsplit/grid.hpp"

namespace testing {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd dense_t(std::size_t n, double h) {
  MatrixXd t = MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    t(k, k) = -2.0 / (h * h);
    if (k > 0) t(k, k - 1) = 1.0 / (h * h);
    if (k + 1 < n) t(k, k + 1) = 1.0 / (h * h);
  }
  return t;
}

// kron(a, b) by loops.
inline MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

// P acts along x (contiguous index), R along y.
inline MatrixXd dense_p(const nlsplit::Grid2D& g) {
  return kron(MatrixXd::Identity(g.n(), g.n()), dense_t(g.n(), g.h()));
}
inline MatrixXd dense_r(const nlsplit::Grid2D& g) {
  return kron(dense_t(g.n(), g.h()), MatrixXd::Identity(g.n(), g.n()));
}

inline VectorXd vec(const nlsplit::Field& f) {
  VectorXd v(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) v[m] = f[m];
  return v;
}

inline nlsplit::Field field(const nlsplit::Grid2D& g, const VectorXd& v) {
  return nlsplit::Field(g, std::vector<double>(v.data(), v.data() + v.size()));
}

inline nlsplit::Field random_field(const nlsplit::Grid2D& g, std::mt19937_64& rng, double lo = 0.0,
                                   double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  nlsplit::Field f(g);
  for (std::size_t m = 0; m < f.size(); ++m) f[m] = dist(rng);
  return f;
}

inline double max_abs_diff(const nlsplit::Field& a, const nlsplit::Field& b) {
  double d = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) d = std::max(d, std::abs(a[m] - b[m]));
  return d;
}

// The four split stages with explicit D_k = diag(v), D_{k+1} = diag(d1),
// coefficients a (linear) and b (self-diffusion).
inline VectorXd split_stages(const MatrixXd& p, const MatrixXd& r, const VectorXd& v, const VectorXd& d1,
                             const VectorXd& f0, const VectorXd& f1, double tau, double a = 1.0, double b = 1.0) {
  const Eigen::Index n = v.size();
  const MatrixXd id = MatrixXd::Identity(n, n);
  const MatrixXd d0m = v.asDiagonal();
  const MatrixXd d1m = d1.asDiagonal();
  const double s = 0.5 * tau;
  const VectorXd w1 = (id - s * a * p).lu().solve((id + s * (a * p + 2 * a * r + 2 * b * p * d0m + 2 * b * r * d0m)) * v + tau * f0);
  const VectorXd w2 = (id - s * a * r).lu().solve(w1 - s * a * r * v);
  const VectorXd w3 = (id - s * b * p * d1m).lu().solve(w2 - s * b * p * d0m * v);
  return (id - s * b * r * d1m).lu().solve(w3 - s * b * r * d0m * v + s * (f1 - f0));
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("nlsplit_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
