#pragma once

// Dense reference for small grids: assembles I (x) T, T (x) I and the diagonal
// scalings explicitly and solves every stage with a dense LU. Used only to
// verify the matrix-free path.

#include <Eigen/Dense>

#include "nlsplit/grid.hpp"
#include "nlsplit/splitting.hpp"

namespace nlsplit {

class DenseOracle {
 public:
  static constexpr std::size_t kMaxN = 16;

  explicit DenseOracle(const Grid2D& grid);

  const Grid2D& grid() const noexcept { return grid_; }
  const Eigen::MatrixXd& T() const noexcept { return t_; }
  const Eigen::MatrixXd& P() const noexcept { return p_; }
  const Eigen::MatrixXd& R() const noexcept { return r_; }
  Eigen::MatrixXd identity() const;
  Eigen::MatrixXd diag(const Field& d) const;
  const Eigen::MatrixXd& op(Axis axis) const noexcept { return axis == Axis::x ? p_ : r_; }

  Eigen::VectorXd to_vector(const Field& v) const;
  Field to_field(const Eigen::VectorXd& v) const;

  // I - alpha * Op (no diagonal) or I - alpha * Op * D(d).
  Eigen::MatrixXd implicit_stage(Axis axis, double alpha) const;
  Eigen::MatrixXd implicit_stage(Axis axis, double alpha, const Field& d) const;
  // I + alpha * Op, I + alpha * Op * D(d).
  Eigen::MatrixXd explicit_stage(Axis axis, double alpha) const;
  Eigen::MatrixXd explicit_stage(Axis axis, double alpha, const Field& d) const;

  static Eigen::VectorXd solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);
  static Eigen::MatrixXd inverse(const Eigen::MatrixXd& a);

  // v + tau * ((aP + aR + bPD + bRD) v + f)
  Field euler_prediction(const Field& v, const Field& f_now, double tau, const DiffusionCoefficients& c) const;

  // Predicted state for D_{k+1} and f_{k+1}, either predictor.
  Field predict(const Field& v, double t, double tau, const SourceTerm& source, const DiffusionCoefficients& c,
                Predictor predictor) const;

  // The four stages of the splitting, each a dense solve.
  Field split_step(const Field& v, double t, double tau, const SourceTerm& source,
                   const DiffusionCoefficients& c = {}, Predictor predictor = Predictor::two_pass) const;

  // Unsplit factored form with the same predicted D_{k+1} and f_{k+1}:
  // (I-aP)(I-aR)(I-bPD1)(I-bRD1) v' = (I+aP)(I+aR)(I+bPD0)(I+bRD0) v + tau/2 (f0 + f1),
  // all operators scaled by tau/2.
  Field factored_step(const Field& v, double t, double tau, const SourceTerm& source,
                      const DiffusionCoefficients& c = {}, Predictor predictor = Predictor::two_pass) const;

 private:
  Eigen::VectorXd stages(const Eigen::VectorXd& x, const Eigen::MatrixXd& d1, const Eigen::VectorXd& f0v,
                         const Eigen::VectorXd& f1v, double tau, const DiffusionCoefficients& c) const;

  Grid2D grid_;
  Eigen::MatrixXd t_, p_, r_;
};

}  // namespace nlsplit
