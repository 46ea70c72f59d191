#ifndef COARSE_SPECTRAL_HPP
#define COARSE_SPECTRAL_HPP

#include "coarse/supported_operator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace coarse {

struct SpectralOptions {
  Index dense_limit = 2000;
  double tolerance = 1e-8;
  /// 0 means 10 * n.
  Index max_iterations = 0;
  Index wanted = 6;
  double kernel_relative = 1e-8;
  std::uint64_t seed = 0x5eed;
};

struct SpectralReport {
  enum class Method { dense, iterative };
  /// Ascending. Dense: the full spectrum. Iterative: the deflated zeros
  /// followed by the smallest eigenvalues found on their complement.
  std::vector<double> eigenvalues;
  double gap = 0.0;
  Index kernel_dim = 0;
  Index component_count = 0;
  bool kernel_basis_is_locally_constant = false;
  Method method = Method::dense;
  double residual = 0.0;
  double lambda_max = 0.0;
  double kernel_threshold = 0.0;
  std::string representation = "standard";
};

inline const char* to_string(SpectralReport::Method m) {
  return m == SpectralReport::Method::dense ? "dense" : "iterative";
}

/// Eigenpairs of a self-adjoint operator. Vectors are mu-orthonormal columns.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

namespace detail {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
DenseMatrix<Scalar> hermitian_dense(const SupportedOperator<Scalar>& op) {
  DenseMatrix<Scalar> b = DenseMatrix<Scalar>(op.symmetric_form());
  return (b + b.adjoint()) * Scalar(0.5);
}

/// Orthonormal (Euclidean, in symmetric-form coordinates) basis of the span of
/// D^{1/2} 1_c over the parts c.
inline Eigen::MatrixXd deflation_basis(const Eigen::VectorXd& mu, const std::vector<int>& partition) {
  const int parts = component_count(partition);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(mu.size(), parts);
  for (Index x = 0; x < mu.size(); ++x) u(x, partition[static_cast<std::size_t>(x)]) = std::sqrt(mu[x]);
  for (int c = 0; c < parts; ++c) {
    double nrm = u.col(c).norm();
    if (nrm > 0) u.col(c) /= nrm;
  }
  return u;
}

template <typename Scalar, typename Basis>
void project_out(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, const Basis& basis) {
  for (Index j = 0; j < basis.cols(); ++j) v -= basis.col(j).template cast<Scalar>() * (basis.col(j).template cast<Scalar>().dot(v));
}

}  // namespace detail

/// Full spectrum of a self-adjoint operator, ascending.
template <typename Scalar>
Eigen::VectorXd eigenvalues(const SupportedOperator<Scalar>& op) {
  Eigen::SelfAdjointEigenSolver<detail::DenseMatrix<Scalar>> solver(detail::hermitian_dense(op),
                                                                     Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline double min_eigenvalue(const RealOperator& op) { return eigenvalues(op).minCoeff(); }

/// Real eigenpairs (real symmetric case), vectors scaled to mu-orthonormality.
inline EigenPairs eigenpairs(const RealOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::hermitian_dense(op));
  EigenPairs out{solver.eigenvalues(), solver.eigenvectors()};
  out.vectors = op.weights().cwiseSqrt().cwiseInverse().asDiagonal() * out.vectors;
  return out;
}

/// Operator norm on L^2(X, mu).
template <typename Scalar>
double operator_norm(const SupportedOperator<Scalar>& op) {
  detail::DenseMatrix<Scalar> b = detail::DenseMatrix<Scalar>(op.symmetric_form());
  if (b.size() == 0) return 0.0;
  Eigen::JacobiSVD<detail::DenseMatrix<Scalar>> svd(b);
  return svd.singularValues()(0);
}

/// Result of the restarted shift-invert Lanczos solver.
struct LanczosResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // symmetric-form coordinates, Euclidean-orthonormal
  double residual = 0.0;
  Index iterations = 0;
};

/// Smallest `wanted` eigenvalues of the Hermitian sparse matrix b restricted to
/// the orthogonal complement of `deflate`, via shift-invert Lanczos with full
/// reorthogonalization, locking, and explicit restarts. Real symmetric only.
inline LanczosResult lanczos_smallest(const Eigen::SparseMatrix<double, Eigen::RowMajor>& b,
                                      const Eigen::MatrixXd& deflate, Index wanted, double tolerance,
                                      Index max_iterations, std::uint64_t seed) {
  const Index n = b.rows();
  const Index free_dim = n - deflate.cols();
  wanted = std::min(wanted, free_dim);
  LanczosResult result;
  if (wanted <= 0) return result;

  // Gershgorin bound on |lambda|; sets the scale of tolerances and the shift.
  double scale = 0.0;
  for (Index x = 0; x < n; ++x) {
    double row = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(b, x); it; ++it) row += std::abs(it.value());
    scale = std::max(scale, row);
  }
  scale = std::max(scale, 1.0);
  const double shift = 1e-9 * scale;

  Eigen::SparseMatrix<double, Eigen::ColMajor> shifted = b;
  for (Index x = 0; x < n; ++x) shifted.coeffRef(x, x) += shift;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double, Eigen::ColMajor>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw ConvergenceError("shift-invert factorization failed", kInfinity);

  Eigen::MatrixXd locked(n, 0);
  std::vector<double> locked_values;
  auto project = [&](Eigen::VectorXd& v) {
    for (int pass = 0; pass < 2; ++pass) {
      detail::project_out(v, deflate);
      detail::project_out(v, locked);
    }
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd start(n);
  for (Index x = 0; x < n; ++x) start[x] = normal(rng);

  const Index max_basis = std::min<Index>(free_dim, std::max<Index>(60, 4 * wanted + 20));
  Index iterations = 0;
  double best_residual = kInfinity;

  while (static_cast<Index>(locked_values.size()) < wanted) {
    const Index remaining_free = free_dim - locked.cols();
    const Index m_cap = std::min(max_basis, remaining_free);
    Eigen::MatrixXd v(n, m_cap);
    Eigen::VectorXd alpha(m_cap), beta(m_cap);
    Eigen::VectorXd q = start;
    project(q);
    if (q.norm() < 1e-300) {
      for (Index x = 0; x < n; ++x) q[x] = normal(rng);
      project(q);
    }
    q.normalize();
    Index m = 0;
    for (; m < m_cap; ++m) {
      v.col(m) = q;
      Eigen::VectorXd w = ldlt.solve(q);
      project(w);
      alpha[m] = q.dot(w);
      for (int pass = 0; pass < 2; ++pass)
        for (Index j = 0; j <= m; ++j) w -= v.col(j) * v.col(j).dot(w);
      project(w);
      beta[m] = w.norm();
      ++iterations;
      if (beta[m] < 1e-14 * std::abs(alpha[m]) || m + 1 == m_cap) {
        ++m;
        break;
      }
      q = w / beta[m];
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
    // Largest theta <-> smallest lambda; iterate from the top.
    const Index need = wanted - static_cast<Index>(locked_values.size());
    Eigen::VectorXd restart = Eigen::VectorXd::Zero(n);
    Index newly_locked = 0;
    for (Index r = 0; r < std::min(need, m); ++r) {
      Index idx = m - 1 - r;
      Eigen::VectorXd y = v.leftCols(m) * tri.eigenvectors().col(idx);
      project(y);
      y.normalize();
      Eigen::VectorXd by = b * y;
      double lambda = y.dot(by);
      double res = (by - lambda * y).norm();
      if (res <= tolerance * scale) {
        locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
        locked.col(locked.cols() - 1) = y;
        locked_values.push_back(lambda);
        result.residual = std::max(result.residual, res);
        ++newly_locked;
      } else {
        best_residual = std::min(best_residual, res);
        restart += y;
      }
    }
    if (static_cast<Index>(locked_values.size()) >= wanted) break;
    if (iterations >= max_iterations)
      throw ConvergenceError("Lanczos did not converge within " + std::to_string(max_iterations) + " iterations",
                             best_residual);
    start = restart.norm() > 0 ? restart : v.col(0);
    (void)newly_locked;
  }

  std::vector<Index> order(locked_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Index>(i);
  std::sort(order.begin(), order.end(), [&](Index a, Index c) { return locked_values[a] < locked_values[c]; });
  result.values.resize(static_cast<Index>(order.size()));
  result.vectors.resize(n, static_cast<Index>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    result.values[static_cast<Index>(i)] = locked_values[static_cast<std::size_t>(order[i])];
    result.vectors.col(static_cast<Index>(i)) = locked.col(order[i]);
  }
  result.iterations = iterations;
  return result;
}

namespace detail {

template <typename Scalar>
SpectralReport dense_gap(const SupportedOperator<Scalar>& op, const std::vector<int>& partition,
                         const SpectralOptions& opts) {
  using M = DenseMatrix<Scalar>;
  SpectralReport report;
  report.method = SpectralReport::Method::dense;
  const Index n = op.size();
  M b = hermitian_dense(op);
  Eigen::SelfAdjointEigenSolver<M> solver(b);
  const Eigen::VectorXd& lam = solver.eigenvalues();
  report.eigenvalues.assign(lam.data(), lam.data() + lam.size());
  report.lambda_max = lam.cwiseAbs().maxCoeff();
  report.kernel_threshold = opts.kernel_relative * std::max(1.0, report.lambda_max);
  report.kernel_dim = (lam.array().abs() <= report.kernel_threshold).count();
  auto sparse_b = op.symmetric_form();
  M residuals = M(sparse_b * solver.eigenvectors()) - solver.eigenvectors() * lam.template cast<Scalar>().asDiagonal();
  report.residual = n == 0 ? 0.0 : residuals.colwise().norm().maxCoeff();

  Eigen::MatrixXd u = deflation_basis(op.weights(), partition);
  report.component_count = u.cols();
  if (u.cols() >= n) {
    report.gap = kInfinity;
  } else {
    M uu = (u * u.transpose()).template cast<Scalar>();
    M p = M::Identity(n, n) - uu;
    const double lift = 2.0 * report.lambda_max + 1.0;
    M compressed = p * b * p + Scalar(lift) * uu;
    compressed = (compressed + compressed.adjoint()) * Scalar(0.5);
    Eigen::SelfAdjointEigenSolver<M> restricted(compressed, Eigen::EigenvaluesOnly);
    report.gap = restricted.eigenvalues()(0);
  }
  report.kernel_basis_is_locally_constant = report.kernel_dim == report.component_count;
  return report;
}

}  // namespace detail

/// Spectral gap of a self-adjoint PSD operator in the standard representation.
///
/// `partition` labels the parts whose indicator functions are deflated (the
/// expected kernel). gap is the smallest eigenvalue on the mu-orthogonal
/// complement of those indicators; kernel_dim counts eigenvalues with
/// |lambda| <= kernel_relative * max(1, lambda_max).
template <typename Scalar>
SpectralReport spectral_gap(const SupportedOperator<Scalar>& op, const std::vector<int>& partition,
                            const SpectralOptions& opts = {}) {
  if (static_cast<Index>(partition.size()) != op.size()) throw InputError("partition size differs from operator size");
  if constexpr (is_complex<Scalar>::value) {
    return detail::dense_gap(op, partition, opts);
  } else {
    if (op.size() <= opts.dense_limit) return detail::dense_gap(op, partition, opts);
    SpectralReport report;
    report.method = SpectralReport::Method::iterative;
    Eigen::MatrixXd u = detail::deflation_basis(op.weights(), partition);
    report.component_count = u.cols();
    auto b = op.symmetric_form();
    Eigen::SparseMatrix<double, Eigen::RowMajor> bt = b.transpose();
    b = (b + bt) * 0.5;
    double norm_bound = 0.0;
    for (Index x = 0; x < b.rows(); ++x) norm_bound = std::max(norm_bound, b.row(x).cwiseAbs().sum());
    report.lambda_max = norm_bound;
    report.kernel_threshold = opts.kernel_relative * std::max(1.0, norm_bound);
    const Index max_it = opts.max_iterations > 0 ? opts.max_iterations : 10 * op.size();
    LanczosResult lz = lanczos_smallest(b, u, opts.wanted, opts.tolerance, max_it, opts.seed);
    report.residual = lz.residual;
    report.eigenvalues.assign(static_cast<std::size_t>(u.cols()), 0.0);
    for (Index i = 0; i < lz.values.size(); ++i) report.eigenvalues.push_back(lz.values[i]);
    report.kernel_dim = u.cols() + (lz.values.array().abs() <= report.kernel_threshold).count();
    report.gap = lz.values.size() > 0 ? lz.values[0] : kInfinity;
    report.kernel_basis_is_locally_constant = report.kernel_dim == report.component_count;
    return report;
  }
}

}  // namespace coarse

#endif  // COARSE_SPECTRAL_HPP
