#include "coarse/heat.hpp"
#include "coarse/io.hpp"
#include "coarse/laplacian.hpp"
#include "coarse/testing/oracles.hpp"
#include "coarse/testing/suite.hpp"

#include <doctest.h>

#include <cmath>

using namespace coarse;

namespace {

FiniteCoarseSpace random_space(suite::Rng& rng, Index n) {
  Eigen::MatrixXd c(n, 2);
  for (Index i = 0; i < n; ++i) c.row(i) << rng.uniform(0, 4), rng.uniform(0, 4);
  Eigen::VectorXd w(n);
  for (Index i = 0; i < n; ++i) w[i] = rng.uniform(0.5, 2.0);
  return FiniteCoarseSpace::euclidean(c, w);
}

Entourage cycle_edges(const FiniteCoarseSpace& c) {
  std::vector<Entourage::Pair> pairs;
  for (Index x = 0; x < c.size(); ++x) {
    pairs.emplace_back(x, (x + 1) % c.size());
    pairs.emplace_back((x + 1) % c.size(), x);
  }
  return Entourage::from_pairs(c, pairs);
}

std::vector<int> whole(Index n) { return std::vector<int>(static_cast<std::size_t>(n), 0); }

}  // namespace

TEST_CASE("support is enforced") {
  auto p = FiniteCoarseSpace::path(3);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 2) = 1.0;
  CHECK_THROWS_WITH_AS(RealOperator::from_dense(a, Entourage::radius(p, 1.0)),
                       doctest::Contains("(0,2)"), InputError);
}

TEST_CASE("kernel convention, adjoint and multiplication operators") {
  suite::Rng rng(2);
  auto s = random_space(rng, 12);
  Entourage e = Entourage::radius(s, 1.5);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(12, 12);
  for (Index x = 0; x < 12; ++x)
    for (Index y : e.row(x)) k(x, y) = rng.uniform(-1, 1);
  RealOperator t = RealOperator::from_kernel(k, e);
  CHECK((t.kernel() - k).cwiseAbs().maxCoeff() <= 1e-14);
  Eigen::VectorXd phi = (k * s.weights());
  CHECK((t.phi() - phi).cwiseAbs().maxCoeff() <= 1e-14);
  RealOperator adj = t.adjoint();
  CHECK((adj.kernel() - k.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  Eigen::VectorXd xi = Eigen::VectorXd::Random(12), eta = Eigen::VectorXd::Random(12);
  CHECK(inner(s.weights(), t.apply(xi), eta) == doctest::Approx(inner(s.weights(), xi, adj.apply(eta))));
  Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(12, 1, 12);
  RealOperator m = RealOperator::multiplication(s, f);
  CHECK((m.apply(xi) - f.cwiseProduct(xi)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(m.kernel()(3, 3) == doctest::Approx(f[3] / s.weight(3)));
}

TEST_CASE("Laplacian examples") {
  SUBCASE("two points") {
    auto p = FiniteCoarseSpace::path(2);
    Eigen::VectorXd ev = eigenvalues(build_laplacian(p, Entourage::finite_distance(p)));
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(2.0));
  }
  SUBCASE("cycle without the diagonal matches the closed form") {
    for (Index n : {5, 8, 13}) {
      auto c = FiniteCoarseSpace::cycle(n);
      Eigen::VectorXd ev = eigenvalues(build_laplacian(c, cycle_edges(c)));
      auto expect = oracle::cycle_spectrum(n);
      for (Index i = 0; i < n; ++i) CHECK(ev[i] == doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
  }
  SUBCASE("diagonal entourage gives zero") {
    auto p = FiniteCoarseSpace::path(5);
    CHECK(build_laplacian(p, Entourage::diagonal(p)).action().nonZeros() == 0);
  }
  SUBCASE("asymmetric entourage is rejected") {
    auto p = FiniteCoarseSpace::path(2);
    CHECK_THROWS_AS(build_laplacian(p, Entourage::from_pairs(p, {{0, 1}})), InputError);
  }
}

TEST_CASE("Laplacian identities on random spaces") {
  suite::Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_space(rng, rng.integer(5, 40));
    const Index n = s.size();
    Entourage e = Entourage::radius(s, rng.uniform(0.5, 2.0));
    RealOperator lap = build_laplacian(s, e);
    CHECK(lap.phi().cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(lap.self_adjoint_defect() <= 1e-12);
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd xi = Eigen::VectorXd::Random(n), eta = Eigen::VectorXd::Random(n);
      double lhs = inner(s.weights(), lap.apply(xi), eta), rhs = inner(s.weights(), xi, lap.apply(eta));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
    // additivity on disjoint symmetric pieces
    Entourage near = Entourage::radius(s, 0.8);
    std::vector<Entourage::Pair> far;
    for (const auto& pr : e.pairs())
      if (!near.contains(pr.first, pr.second)) far.push_back(pr);
    Entourage f2 = Entourage::from_pairs(s, far);
    Eigen::MatrixXd sum = build_laplacian(s, near).dense() + build_laplacian(s, f2).dense();
    Entourage both = unite(near, f2);
    CHECK((sum - build_laplacian(s, both).dense()).cwiseAbs().maxCoeff() <= 1e-13);
    // monotonicity
    Entourage big = Entourage::radius(s, 2.5);
    RealOperator diff = build_laplacian(s, big) - build_laplacian(s, e);
    CHECK(min_eigenvalue(diff) >= -1e-9);
  }
}

TEST_CASE("quadratic form") {
  auto p = FiniteCoarseSpace::path(6);
  Entourage e = Entourage::radius(p, 1.0);
  RealOperator lap = build_laplacian(p, e);
  CHECK(quadratic_form(lap, Eigen::VectorXd::Ones(6)) == doctest::Approx(0.0));
  Eigen::VectorXd ind = Eigen::VectorXd::Zero(6);
  ind[2] = 1.0;
  CHECK(quadratic_form(lap, ind) == doctest::Approx(2.0));
  suite::Rng rng(4);
  auto s = random_space(rng, 30);
  ComplexOperator clap = build_laplacian<std::complex<double>>(s, Entourage::radius(s, 1.3));
  ComplexOperator::Vector xi = ComplexOperator::Vector::Random(30);
  CHECK(quadratic_form(clap, xi) >= 0.0);
}

TEST_CASE("positivity bounds") {
  auto c = FiniteCoarseSpace::cycle(10);
  PositivityReport even = verify_positivity_bounds(build_laplacian(c, cycle_edges(c)));
  CHECK(even.ok);
  CHECK(even.lambda_max == doctest::Approx(4.0));
  auto odd = FiniteCoarseSpace::cycle(9);
  CHECK(verify_positivity_bounds(build_laplacian(odd, cycle_edges(odd))).lambda_max < 4.0 - 1e-3);
  auto p = FiniteCoarseSpace::path(4);
  PositivityReport zero = verify_positivity_bounds(build_laplacian(p, Entourage::diagonal(p)));
  CHECK(zero.lambda_min == 0.0);
  CHECK(zero.lambda_max == 0.0);
  CHECK(zero.section_mass == 1.0);
}

TEST_CASE("block domination") {
  auto p = FiniteCoarseSpace::path(15);
  BlockingCollection b = make_blocking(p, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {10, 11, 12, 13, 14}});
  SUBCASE("T is the block Laplacian") {
    RealOperator t = build_laplacian(p, b.in_blocks());
    DominationCertificate cert = block_domination_certificate(t, b);
    CHECK(cert.ok);
    CHECK(cert.constant >= 1.0);
  }
  SUBCASE("T = 0") {
    RealOperator t(RealOperator::Sparse(15, 15), b.in_blocks());
    DominationCertificate cert = block_domination_certificate(t, b);
    CHECK(cert.ok);
    CHECK(cert.constant == 0.0);
  }
  SUBCASE("preconditions are named") {
    RealOperator wide = build_laplacian(p, Entourage::radius(p, 1.0));
    CHECK_THROWS_WITH_AS(block_domination_certificate(wide, b), doctest::Contains("supported"), InputError);
    RealOperator neg = build_laplacian(p, b.in_blocks()).scaled(-1.0);
    CHECK_THROWS_WITH_AS(block_domination_certificate(neg, b), doctest::Contains("positive"), InputError);
    RealOperator ident = RealOperator::multiplication(p, Eigen::VectorXd::Ones(15));
    CHECK_THROWS_WITH_AS(block_domination_certificate(ident, b), doctest::Contains("Phi"), InputError);
  }
}

TEST_CASE("spectral gap") {
  SUBCASE("cycles, dense and iterative") {
    for (Index n : {8, 32, 128}) {
      auto c = FiniteCoarseSpace::cycle(n);
      RealOperator lap = build_laplacian(c, cycle_edges(c));
      SpectralReport d = spectral_gap(lap, whole(n));
      SpectralOptions it;
      it.dense_limit = 0;
      SpectralReport i = spectral_gap(lap, whole(n), it);
      CHECK(d.kernel_dim == 1);
      CHECK(i.kernel_dim == 1);
      CHECK(std::abs(d.gap - oracle::cycle_gap(n)) <= 1e-10);
      CHECK(std::abs(i.gap - oracle::cycle_gap(n)) <= 1e-10);
      CHECK(i.method == SpectralReport::Method::iterative);
      CHECK(d.residual <= 1e-8);
    }
  }
  SUBCASE("two components") {
    Eigen::MatrixXd c(4, 1);
    c << 0, 1, 10, 11;
    auto s = FiniteCoarseSpace::euclidean(c, Eigen::VectorXd::Ones(4));
    Entourage e = Entourage::radius(s, 1.0);
    SpectralReport r = spectral_gap(build_laplacian(s, e), connected_components(e));
    CHECK(r.kernel_dim == 2);
    CHECK(r.component_count == 2);
    CHECK(r.kernel_basis_is_locally_constant);
    CHECK(r.gap == doctest::Approx(2.0));
  }
  SUBCASE("complete graph") {
    const Index n = 7;
    Eigen::MatrixXd d = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
    auto k = FiniteCoarseSpace::from_distances(d, Eigen::VectorXd::Ones(n));
    std::vector<Entourage::Pair> pairs;
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        if (x != y) pairs.emplace_back(x, y);
    SpectralReport r = spectral_gap(build_laplacian(k, Entourage::from_pairs(k, pairs)), whole(n));
    CHECK(r.gap == doctest::Approx(7.0));
  }
  SUBCASE("complex operators take the dense path") {
    auto c = FiniteCoarseSpace::cycle(12);
    ComplexOperator lap = build_laplacian<std::complex<double>>(c, cycle_edges(c));
    CHECK(spectral_gap(lap, whole(12)).gap == doctest::Approx(oracle::cycle_gap(12)));
  }
}

TEST_CASE("heat operator") {
  auto c = FiniteCoarseSpace::cycle(40);
  RealOperator dm = build_laplacian(c, Entourage::radius(c, 1.0));
  SUBCASE("zero input") {
    auto p = FiniteCoarseSpace::path(4);
    RealOperator h = heat_operator(build_laplacian(p, Entourage::diagonal(p)));
    CHECK(h.dense().cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("eigenvalue ln 2 maps to 1/2") {
    auto p = FiniteCoarseSpace::path(2);
    RealOperator lap = build_laplacian(p, Entourage::finite_distance(p)).scaled(std::log(2.0) / 2.0);
    Eigen::VectorXd ev = eigenvalues(heat_operator(lap));
    CHECK(ev[1] == doctest::Approx(0.5));
  }
  SUBCASE("spectral map on the cycle, dense and Pade paths") {
    std::vector<double> expect;
    for (double l : oracle::cycle_spectrum(40)) expect.push_back(1.0 - std::exp(-l));
    for (Index limit : {Index{2000}, Index{0}}) {
      Eigen::VectorXd ev = eigenvalues(heat_operator(dm, limit));
      for (Index i = 0; i < 40; ++i) CHECK(std::abs(ev[i] - expect[static_cast<std::size_t>(i)]) <= 1e-10);
    }
  }
  SUBCASE("non-PSD input is rejected") { CHECK_THROWS_AS(heat_operator(dm.scaled(-1.0)), InputError); }
  SUBCASE("estimates") {
    RealOperator h = heat_operator(dm);
    HeatEstimate est = heat_estimate_check(h, dm, 0.1);
    CHECK(est.ok);
    CHECK(std::isfinite(est.lower));
    CHECK(std::isfinite(est.upper));
    // scalar map bounds of (1 - e^-l) / l over the nonzero spectrum
    double lo = kInfinity, hi = 0;
    for (double l : oracle::cycle_spectrum(40))
      if (l > 1e-12) {
        lo = std::min(lo, (1 - std::exp(-l)) / l);
        hi = std::max(hi, (1 - std::exp(-l)) / l);
      }
    HeatEstimate tight = heat_estimate_check(h, dm, 0.0);
    CHECK(tight.lower == doctest::Approx(lo).epsilon(1e-6));
    CHECK(tight.upper == doctest::Approx(hi).epsilon(1e-6));
    HeatEstimate self = heat_estimate_check(dm, dm, 0.0);
    CHECK(self.lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(self.upper == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("zero radius Laplacian with nonzero heat") {
    RealOperator zero = build_laplacian(c, Entourage::diagonal(c));
    CHECK_FALSE(heat_estimate_check(heat_operator(dm), zero, 0.1).ok);
  }
}

TEST_CASE("spectral report serialization") {
  auto c = FiniteCoarseSpace::cycle(6);
  SpectralReport r = spectral_gap(build_laplacian(c, cycle_edges(c)), whole(6));
  auto j = io::to_json(r);
  CHECK(j["representation"] == "standard");
  CHECK(j["kernel_dim"] == 1);
  CHECK(j["eigenvalues"].size() == 6);
  std::string csv = io::spectrum_csv(r.eigenvalues);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(io::spectrum_svg(r.eigenvalues).find("<svg") == 0);
}
