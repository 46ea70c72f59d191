#ifndef COARSE_HEAT_HPP
#define COARSE_HEAT_HPP

#include "coarse/laplacian.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace coarse {

/// Delta_H = 1 - exp(-Delta_M) for self-adjoint PSD Delta_M.
///
/// Up to `dense_limit` points the exponential is taken through the
/// eigendecomposition of the symmetric form; beyond it through Pade
/// scaling-and-squaring. The result is supported on the components of
/// Delta_M's support.
inline RealOperator heat_operator(const RealOperator& delta_m, Index dense_limit = 2000, double tolerance = 1e-9) {
  const Index n = delta_m.size();
  if (delta_m.self_adjoint_defect() > 1e-10 * std::max(1.0, operator_norm(delta_m)))
    throw InputError("heat operator requires a self-adjoint input");
  Eigen::MatrixXd b = detail::hermitian_dense(delta_m);
  Eigen::MatrixXd exp_b;
  if (n <= dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    const Eigen::VectorXd& lam = solver.eigenvalues();
    if (lam.minCoeff() < -tolerance * std::max(1.0, lam.cwiseAbs().maxCoeff()))
      throw InputError("heat operator requires a positive input (min eigenvalue " + std::to_string(lam.minCoeff()) + ")");
    Eigen::VectorXd decay = (-lam.cwiseMax(0.0)).array().exp().matrix();
    exp_b = solver.eigenvectors() * decay.asDiagonal() * solver.eigenvectors().transpose();
  } else {
    exp_b = (-b).exp();
  }
  Eigen::MatrixXd heat_b = Eigen::MatrixXd::Identity(n, n) - exp_b;
  // back from symmetric form: A = D^{-1/2} B D^{1/2}
  Eigen::VectorXd s = delta_m.weights().cwiseSqrt();
  Eigen::MatrixXd action = s.cwiseInverse().asDiagonal() * heat_b * s.asDiagonal();
  auto labels = connected_components(delta_m.support());
  std::vector<PointSet> comps = components_as_sets(labels);
  Entourage support = Entourage::from_blocks(delta_m.space(), comps);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (labels[static_cast<std::size_t>(x)] != labels[static_cast<std::size_t>(y)]) action(x, y) = 0.0;
  return RealOperator::from_dense(action, std::move(support));
}

struct HeatEstimate {
  double lower = 0.0;  // largest c with Delta_H - c Delta_R >= -tol
  double upper = 0.0;  // smallest d with eps + d Delta_R - Delta_H >= -tol
  bool lower_found = false;
  bool upper_found = false;
  bool ok = false;
};

/// Discrete two-sided comparison of Delta_H with a radius Laplacian Delta_R
/// by bisection on the PSD test of the symmetric forms.
inline HeatEstimate heat_estimate_check(const RealOperator& heat, const RealOperator& radius_lap, double epsilon,
                                        double tolerance = 1e-10, int iterations = 200) {
  if (!heat.space().same(radius_lap.space())) throw InputError("operators live on different spaces");
  const Index n = heat.size();
  Eigen::MatrixXd h = detail::hermitian_dense(heat);
  Eigen::MatrixXd r = detail::hermitian_dense(radius_lap);
  auto min_eig = [](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(m, Eigen::EigenvaluesOnly);
    return s.eigenvalues()(0);
  };
  const double h_norm = operator_norm(heat);
  const double r_norm = operator_norm(radius_lap);
  HeatEstimate out;
  if (r_norm == 0.0) {
    out.lower_found = false;
    out.upper_found = epsilon >= h_norm;
    out.ok = h_norm == 0.0;
    return out;
  }

  auto lower_ok = [&](double c) { return min_eig(h - c * r) >= -tolerance; };
  double lo = 0.0, hi = h_norm / r_norm;
  if (lower_ok(hi)) {
    lo = hi;
  } else {
    for (int it = 0; it < iterations && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      double mid = 0.5 * (lo + hi);
      (lower_ok(mid) ? lo : hi) = mid;
    }
  }
  out.lower = lo;
  out.lower_found = lo > 0.0;

  Eigen::MatrixXd eps_i = epsilon * Eigen::MatrixXd::Identity(n, n);
  auto upper_ok = [&](double d) { return min_eig(eps_i + d * r - h) >= -tolerance; };
  if (upper_ok(0.0)) {
    out.upper = 0.0;
    out.upper_found = true;
  } else {
    double top = std::max(1.0, h_norm / r_norm);
    while (!upper_ok(top) && top < 1e12) top *= 2.0;
    if (upper_ok(top)) {
      double bottom = 0.0;
      for (int it = 0; it < iterations && top - bottom > 1e-15 * std::max(1.0, top); ++it) {
        double mid = 0.5 * (bottom + top);
        (upper_ok(mid) ? top : bottom) = mid;
      }
      out.upper = top;
      out.upper_found = true;
    }
  }
  out.ok = out.lower_found && out.upper_found;
  return out;
}

}  // namespace coarse

#endif  // COARSE_HEAT_HPP
