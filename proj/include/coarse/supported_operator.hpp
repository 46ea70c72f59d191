#ifndef COARSE_SUPPORTED_OPERATOR_HPP
#define COARSE_SUPPORTED_OPERATOR_HPP

#include "coarse/entourage.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <sstream>
#include <type_traits>
#include <vector>

namespace coarse {

template <typename Scalar>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Operator on L^2(X, mu) with controlled support.
///
/// Stored as the action matrix A acting on coefficient vectors, (T xi)(x) =
/// sum_y A(x,y) xi(y). The kernel against mu is T(x,y) = A(x,y) / mu(y), so
/// Phi(T) = T(1) is the row-sum vector of A and the adjoint with respect to
/// <xi, eta> = sum_x conj(xi(x)) eta(x) mu(x) is D^-1 A^H D with D = diag(mu).
template <typename Scalar_ = double>
class SupportedOperator {
 public:
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Sparse = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

  /// Throws InputError naming the first nonzero entry outside `support`.
  SupportedOperator(Sparse action, Entourage support)
      : action_(std::move(action)), support_(std::move(support)) {
    action_.makeCompressed();
    const Index n = support_.size();
    if (action_.rows() != n || action_.cols() != n) throw InputError("operator dimension differs from space size");
    for (Index x = 0; x < n; ++x)
      for (typename Sparse::InnerIterator it(action_, x); it; ++it)
        if (it.value() != Scalar(0) && !support_.contains(x, it.col())) {
          std::ostringstream msg;
          msg << "nonzero entry (" << x << "," << it.col() << ") lies outside the declared support";
          throw InputError(msg.str());
        }
  }

  static SupportedOperator from_dense(const Matrix& action, Entourage support) {
    Sparse sparse = action.sparseView();
    return SupportedOperator(std::move(sparse), std::move(support));
  }

  /// Builds from kernel values T(x,y), i.e. action = kernel * diag(mu).
  static SupportedOperator from_kernel(const Matrix& kernel, Entourage support) {
    const auto& mu = support.space().weights();
    Matrix action = kernel * mu.template cast<Scalar>().asDiagonal();
    return from_dense(action, std::move(support));
  }

  /// Multiplication operator M_f: kernel f(x)/mu(x) on the diagonal.
  static SupportedOperator multiplication(const FiniteCoarseSpace& space, const Vector& f) {
    Sparse a(space.size(), space.size());
    std::vector<Eigen::Triplet<Scalar>> trips;
    for (Index x = 0; x < space.size(); ++x) trips.emplace_back(x, x, f[x]);
    a.setFromTriplets(trips.begin(), trips.end());
    return SupportedOperator(std::move(a), Entourage::diagonal(space));
  }

  const Sparse& action() const { return action_; }
  const Entourage& support() const { return support_; }
  const FiniteCoarseSpace& space() const { return support_.space(); }
  const Eigen::VectorXd& weights() const { return space().weights(); }
  Index size() const { return action_.rows(); }

  Matrix dense() const { return Matrix(action_); }
  Matrix kernel() const { return dense() * weights().cwiseInverse().template cast<Scalar>().asDiagonal(); }

  Vector apply(const Vector& xi) const { return action_ * xi; }
  /// Phi(T) = T(1_X).
  Vector phi() const { return action_ * Vector::Ones(size()); }

  SupportedOperator adjoint() const {
    const Eigen::VectorXd& mu = weights();
    Sparse adj = Sparse(action_.adjoint());
    for (Index x = 0; x < adj.outerSize(); ++x)
      for (typename Sparse::InnerIterator it(adj, x); it; ++it) it.valueRef() *= Scalar(mu[it.col()] / mu[x]);
    return SupportedOperator(std::move(adj), support_.is_symmetric() ? support_ : support_.inverse());
  }

  /// D^{1/2} A D^{-1/2}; Hermitian exactly when the operator is self-adjoint.
  Sparse symmetric_form() const {
    const Eigen::VectorXd& mu = weights();
    Sparse b = action_;
    for (Index x = 0; x < b.outerSize(); ++x)
      for (typename Sparse::InnerIterator it(b, x); it; ++it) it.valueRef() *= Scalar(std::sqrt(mu[x] / mu[it.col()]));
    return b;
  }

  /// Largest |entry| of A - A* (zero for self-adjoint operators).
  RealScalar self_adjoint_defect() const {
    Matrix diff = dense() - adjoint().dense();
    return diff.size() == 0 ? RealScalar(0) : diff.cwiseAbs().maxCoeff();
  }

  SupportedOperator operator+(const SupportedOperator& o) const {
    return SupportedOperator(Sparse(action_ + o.action_), unite(support_, o.support_));
  }
  SupportedOperator operator-(const SupportedOperator& o) const {
    return SupportedOperator(Sparse(action_ - o.action_), unite(support_, o.support_));
  }
  SupportedOperator scaled(Scalar c) const { return SupportedOperator(Sparse(c * action_), support_); }

 private:
  Sparse action_;
  Entourage support_;
};

using RealOperator = SupportedOperator<double>;
using ComplexOperator = SupportedOperator<std::complex<double>>;

/// <xi, eta>_mu = sum_x conj(xi(x)) eta(x) mu(x).
template <typename Derived1, typename Derived2>
typename Derived1::Scalar inner(const Eigen::VectorXd& mu, const Eigen::MatrixBase<Derived1>& xi,
                                const Eigen::MatrixBase<Derived2>& eta) {
  using Scalar = typename Derived1::Scalar;
  return (xi.conjugate().cwiseProduct(eta).cwiseProduct(mu.template cast<Scalar>())).sum();
}

template <typename Derived>
double mu_norm(const Eigen::VectorXd& mu, const Eigen::MatrixBase<Derived>& xi) {
  return std::sqrt((xi.cwiseAbs2().cwiseProduct(mu)).sum());
}

}  // namespace coarse

#endif  // COARSE_SUPPORTED_OPERATOR_HPP
