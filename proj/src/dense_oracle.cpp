#include "nlsplit/dense_oracle.hpp"

#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "nlsplit/errors.hpp"

namespace nlsplit {

DenseOracle::DenseOracle(const Grid2D& grid) : grid_(grid) {
  const auto n = static_cast<Eigen::Index>(grid.n());
  if (grid.n() > kMaxN)
    throw ContractViolation("DenseOracle: N = " + std::to_string(grid.n()) + " exceeds " + std::to_string(kMaxN));
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  t_ = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t_(i, i) = -2.0 * inv_h2;
    if (i > 0) t_(i, i - 1) = inv_h2;
    if (i + 1 < n) t_(i, i + 1) = inv_h2;
  }
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  p_ = Eigen::kroneckerProduct(eye, t_);
  r_ = Eigen::kroneckerProduct(t_, eye);
}

Eigen::MatrixXd DenseOracle::identity() const {
  const auto m = static_cast<Eigen::Index>(grid_.size());
  return Eigen::MatrixXd::Identity(m, m);
}

Eigen::MatrixXd DenseOracle::diag(const Field& d) const { return to_vector(d).asDiagonal(); }

Eigen::VectorXd DenseOracle::to_vector(const Field& v) const {
  if (!(v.grid() == grid_)) throw DimensionMismatch("DenseOracle: grid mismatch");
  return Eigen::Map<const Eigen::VectorXd>(v.values().data(), static_cast<Eigen::Index>(v.size()));
}

Field DenseOracle::to_field(const Eigen::VectorXd& v) const {
  if (static_cast<std::size_t>(v.size()) != grid_.size()) throw DimensionMismatch("DenseOracle: vector size");
  return Field(grid_, std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::MatrixXd DenseOracle::implicit_stage(Axis axis, double alpha) const { return identity() - alpha * op(axis); }

Eigen::MatrixXd DenseOracle::implicit_stage(Axis axis, double alpha, const Field& d) const {
  return identity() - alpha * op(axis) * diag(d);
}

Eigen::MatrixXd DenseOracle::explicit_stage(Axis axis, double alpha) const { return identity() + alpha * op(axis); }

Eigen::MatrixXd DenseOracle::explicit_stage(Axis axis, double alpha, const Field& d) const {
  return identity() + alpha * op(axis) * diag(d);
}

Eigen::VectorXd DenseOracle::solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return a.fullPivLu().solve(b);
}

Eigen::MatrixXd DenseOracle::inverse(const Eigen::MatrixXd& a) { return a.fullPivLu().inverse(); }

Field DenseOracle::euler_prediction(const Field& v, const Field& f_now, double tau,
                                    const DiffusionCoefficients& c) const {
  const Eigen::VectorXd x = to_vector(v);
  const Eigen::MatrixXd d0 = diag(v);
  const Eigen::VectorXd rate = (c.linear * (p_ + r_) + c.self * (p_ * d0 + r_ * d0)) * x + to_vector(f_now);
  return to_field(x + tau * rate);
}

Field DenseOracle::predict(const Field& v, double t, double tau, const SourceTerm& source,
                           const DiffusionCoefficients& c, Predictor predictor) const {
  const Field f0 = source.evaluate(v, t);
  if (predictor == Predictor::euler) return euler_prediction(v, f0, tau, c);
  const Eigen::VectorXd f0v = to_vector(f0);
  return to_field(stages(to_vector(v), diag(v), f0v, f0v, tau, c));
}

Eigen::VectorXd DenseOracle::stages(const Eigen::VectorXd& x, const Eigen::MatrixXd& d1, const Eigen::VectorXd& f0v,
                                    const Eigen::VectorXd& f1v, double tau, const DiffusionCoefficients& c) const {
  const double half = 0.5 * tau;
  const double a = c.linear, b = c.self;
  const Eigen::MatrixXd d0 = x.asDiagonal();
  const Eigen::MatrixXd I = identity();
  const Eigen::VectorXd rhs1 = (I + half * (a * p_ + 2.0 * a * r_ + 2.0 * b * p_ * d0 + 2.0 * b * r_ * d0)) * x + tau * f0v;
  const Eigen::VectorXd w1 = solve(I - half * a * p_, rhs1);
  const Eigen::VectorXd w2 = solve(I - half * a * r_, w1 - half * a * r_ * x);
  const Eigen::VectorXd w3 = solve(I - half * b * p_ * d1, w2 - half * b * p_ * d0 * x);
  return solve(I - half * b * r_ * d1, w3 - half * b * r_ * d0 * x + half * (f1v - f0v));
}

Field DenseOracle::split_step(const Field& v, double t, double tau, const SourceTerm& source,
                              const DiffusionCoefficients& c, Predictor predictor) const {
  const Field f0 = source.evaluate(v, t);
  const Field pred = predict(v, t, tau, source, c, predictor);
  const Field f1 = source.evaluate(pred, t + tau);
  return to_field(stages(to_vector(v), diag(pred), to_vector(f0), to_vector(f1), tau, c));
}

Field DenseOracle::factored_step(const Field& v, double t, double tau, const SourceTerm& source,
                                 const DiffusionCoefficients& c, Predictor predictor) const {
  const double half = 0.5 * tau;
  const double a = c.linear, b = c.self;
  const Eigen::VectorXd x = to_vector(v);
  const Eigen::MatrixXd d0 = diag(v);
  const Field f0 = source.evaluate(v, t);
  const Field pred = predict(v, t, tau, source, c, predictor);
  const Field f1 = source.evaluate(pred, t + tau);
  const Eigen::MatrixXd d1 = diag(pred);
  const Eigen::MatrixXd I = identity();

  const Eigen::MatrixXd lhs = (I - half * a * p_) * (I - half * a * r_) * (I - half * b * p_ * d1) * (I - half * b * r_ * d1);
  const Eigen::MatrixXd rhs_op = (I + half * a * p_) * (I + half * a * r_) * (I + half * b * p_ * d0) * (I + half * b * r_ * d0);
  const Eigen::VectorXd rhs = rhs_op * x + half * (to_vector(f0) + to_vector(f1));
  return to_field(solve(lhs, rhs));
}

}  // namespace nlsplit
