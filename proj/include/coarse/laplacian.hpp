#ifndef COARSE_LAPLACIAN_HPP
#define COARSE_LAPLACIAN_HPP

#include "coarse/blocking.hpp"
#include "coarse/spectral.hpp"

#include <sstream>
#include <string>

namespace coarse {

/// Delta^E xi(x) = sum_{y in E_x} (xi(x) - xi(y)) mu(y), for symmetric E.
/// The support is E together with the diagonal.
template <typename Scalar = double>
SupportedOperator<Scalar> build_laplacian(const FiniteCoarseSpace& space, const Entourage& e) {
  if (!e.space().same(space)) throw InputError("entourage lives on a different space");
  if (!e.is_symmetric()) throw InputError("Laplacian requires a symmetric entourage");
  const Index n = space.size();
  std::vector<Eigen::Triplet<Scalar>> trips;
  for (Index x = 0; x < n; ++x) {
    double mass = 0.0;
    for (Index y : e.section(x)) {
      if (y == x) continue;
      mass += space.weight(y);
      trips.emplace_back(x, y, Scalar(-space.weight(y)));
    }
    if (mass != 0.0) trips.emplace_back(x, x, Scalar(mass));
  }
  typename SupportedOperator<Scalar>::Sparse a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  return SupportedOperator<Scalar>(std::move(a), e.contains_diagonal() ? e : with_diagonal(e));
}

/// max_x mu(E_x) over the operator's support.
inline double max_section_mass(const Entourage& e) {
  double m = 0.0;
  for (Index x = 0; x < e.size(); ++x) m = std::max(m, e.space().measure(e.section(x)));
  return m;
}

/// <Delta xi, xi> via the half sum of squared differences over E, cross-checked
/// against the matrix product. Throws ConsistencyError on disagreement.
template <typename Scalar, typename Derived>
double quadratic_form(const SupportedOperator<Scalar>& lap, const Eigen::MatrixBase<Derived>& xi,
                      double relative_tolerance = 1e-10) {
  const Entourage& e = lap.support();
  const auto& mu = lap.weights();
  double formula = 0.0;
  for (Index x = 0; x < lap.size(); ++x)
    for (Index y : e.section(x)) formula += std::norm(xi[x] - xi[y]) * mu[x] * mu[y];
  formula *= 0.5;
  typename SupportedOperator<Scalar>::Vector v = xi;
  Scalar matrix = inner(mu, lap.apply(v), v);
  double scale = 2.0 * max_section_mass(e) * mu_norm(mu, v) * mu_norm(mu, v);
  double diff = std::abs(matrix - Scalar(formula));
  if (diff > relative_tolerance * std::max(scale, std::abs(formula)) + 1e-300) {
    std::ostringstream msg;
    msg << "quadratic form mismatch: matrix " << std::real(matrix) << " vs formula " << formula;
    throw ConsistencyError(msg.str());
  }
  return formula;
}

struct PositivityReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double section_mass = 0.0;  // M = sup_x mu(E_x)
  Eigen::VectorXd min_vector;
  Eigen::VectorXd max_vector;
  double tolerance = 1e-9;
  bool ok = false;

  std::string describe() const {
    std::ostringstream out;
    out << "lambda_min=" << lambda_min << " lambda_max=" << lambda_max << " 2M=" << 2.0 * section_mass;
    return out.str();
  }
};

/// Certifies 0 <= Delta^E <= 2 sup_x mu(E_x) in the standard representation.
inline PositivityReport verify_positivity_bounds(const RealOperator& lap, double tolerance = 1e-9) {
  PositivityReport r;
  r.tolerance = tolerance;
  r.section_mass = max_section_mass(lap.support());
  EigenPairs pairs = eigenpairs(lap);
  const Index n = pairs.values.size();
  r.lambda_min = pairs.values[0];
  r.lambda_max = pairs.values[n - 1];
  r.min_vector = pairs.vectors.col(0);
  r.max_vector = pairs.vectors.col(n - 1);
  r.ok = r.lambda_min >= -tolerance && r.lambda_max <= 2.0 * r.section_mass + tolerance;
  return r;
}

struct DominationCertificate {
  double constant = 0.0;     // c = ||T|| / epsilon
  double min_eigenvalue = 0.0;  // of c Delta^E - T
  double epsilon = 0.0;
  double tolerance = 1e-9;
  bool ok = false;
};

/// T <= (||T|| / eps) Delta^E for E = disjoint union of the blocks A_i x A_i,
/// where eps = base.floor, T positive with Phi(T) = 0 supported on E.
inline DominationCertificate block_domination_certificate(const RealOperator& t, const BlockingCollection& base,
                                                          double tolerance = 1e-9) {
  if (!base.bound.space().same(t.space())) throw InputError("blocking collection lives on a different space");
  const FiniteCoarseSpace& space = t.space();
  Entourage blocks = base.in_blocks();
  const auto& a = t.action();
  for (Index x = 0; x < a.outerSize(); ++x)
    for (RealOperator::Sparse::InnerIterator it(a, x); it; ++it)
      if (it.value() != 0.0 && !blocks.contains(x, it.col()))
        throw InputError("precondition unmet: T is not supported on the blocks (entry (" + std::to_string(x) + "," +
                         std::to_string(it.col()) + "))");
  const double norm = operator_norm(t);
  if (t.self_adjoint_defect() > 1e-10 * std::max(1.0, norm))
    throw InputError("precondition unmet: T is not self-adjoint");
  if (t.phi().cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, norm))
    throw InputError("precondition unmet: Phi(T) != 0");
  if (min_eigenvalue(t) < -tolerance * std::max(1.0, norm)) throw InputError("precondition unmet: T is not positive");

  DominationCertificate cert;
  cert.tolerance = tolerance;
  cert.epsilon = base.floor;
  cert.constant = norm / base.floor;
  RealOperator lap = build_laplacian(space, blocks);
  RealOperator diff = lap.scaled(cert.constant) - t;
  cert.min_eigenvalue = min_eigenvalue(diff);
  cert.ok = cert.min_eigenvalue >= -tolerance;
  return cert;
}

}  // namespace coarse

#endif  // COARSE_LAPLACIAN_HPP
