#include "coarse/amenability.hpp"
#include "coarse/io.hpp"
#include "coarse/laplacian.hpp"
#include "coarse/testing/oracles.hpp"
#include "coarse/testing/suite.hpp"

#include <doctest.h>

using namespace coarse;

TEST_CASE("whole space is Folner when the mass cap allows it") {
  auto p = FiniteCoarseSpace::path(9);
  Entourage e = Entourage::radius(p, 1.0);
  PointSet all(9);
  std::iota(all.begin(), all.end(), Index{0});
  CHECK(folner_ratio(e, all) == 1.0);
  FolnerOptions opts;
  opts.mass_cap = 1.0;
  FolnerSearch s = folner_search(p, e, 1e-9, opts);
  REQUIRE(s.certificate);
  CHECK(s.certificate->ratio == 1.0);
}

TEST_CASE("half interval of a path") {
  const Index n = 100;  // points 0..n
  auto p = FiniteCoarseSpace::path(n + 1);
  Entourage e = Entourage::radius(p, 1.0);
  PointSet half(static_cast<std::size_t>(n / 2));
  std::iota(half.begin(), half.end(), Index{0});
  const double h = static_cast<double>(half.size());
  CHECK(folner_ratio(e, half) == doctest::Approx((h + 1) / h));
  FolnerSearch s = folner_search(p, e, 0.05);
  REQUIRE(s.certificate);
  CHECK(s.certificate->ratio <= 1.05);
  CHECK(s.certificate->valid());
  CHECK(folner_ratio(e, s.certificate->subset) == s.certificate->ratio);
  CHECK(io::to_json(*s.certificate)["valid"] == true);
}

TEST_CASE("Folner search input checks") {
  auto p = FiniteCoarseSpace::path(4);
  std::vector<Entourage::Pair> off{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(folner_search(p, Entourage::from_pairs(p, off), 0.1), InputError);
  CHECK_THROWS_AS(folner_search(p, Entourage::radius(p, 1.0), 0.0), InputError);
}

TEST_CASE("search agrees with the subset oracle on small spaces") {
  suite::Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = rng.integer(4, 13);
    Eigen::MatrixXd c(n, 1);
    for (Index i = 0; i < n; ++i) c(i, 0) = rng.uniform(0, static_cast<double>(n));
    Eigen::VectorXd w(n);
    for (Index i = 0; i < n; ++i) w[i] = rng.uniform(0.5, 2.0);
    auto s = FiniteCoarseSpace::euclidean(c, w);
    const double r = rng.uniform(0.3, 2.5), eps = rng.uniform(0.05, 1.0);
    FolnerSearch found = folner_search(s, Entourage::radius(s, r), eps);
    oracle::SubsetScan scan = oracle::exhaustive_folner(s, r, eps, 0.5);
    CHECK(found.certificate.has_value() == scan.qualifying.has_value());
    CHECK(found.best_ratio == doctest::Approx(scan.best_ratio).epsilon(1e-12));
  }
}

TEST_CASE("heuristic stages alone on a long path") {
  auto p = FiniteCoarseSpace::path(60);
  FolnerOptions opts;
  opts.exhaustive_limit = 0;
  FolnerSearch s = folner_search(p, Entourage::radius(p, 1.0), 0.05, opts);
  REQUIRE(s.certificate);
  CHECK(s.stage != "exhaustive");
}

TEST_CASE("enlarging the entourage never lowers a ratio") {
  suite::Rng rng(8);
  auto p = FiniteCoarseSpace::path(30);
  for (int trial = 0; trial < 50; ++trial) {
    PointSet u;
    for (Index x = 0; x < 30; ++x)
      if (rng.uniform() < 0.3) u.push_back(x);
    if (u.empty()) continue;
    CHECK(folner_ratio(Entourage::radius(p, 1.0), u) <= folner_ratio(Entourage::radius(p, 2.0), u));
  }
}

TEST_CASE("family verdicts") {
  SUBCASE("complete graphs") {
    std::vector<FamilyLevel> levels;
    for (int t = 1; t <= 3; ++t) {
      const Index n = 6;
      Eigen::MatrixXd d = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
      auto k = FiniteCoarseSpace::from_distances(d, Eigen::VectorXd::Ones(n));
      levels.push_back({t, k, Entourage::finite_distance(k)});
    }
    FamilyVerdict v = family_verdict(levels, 1.0);
    CHECK(v.verdict == FamilyVerdict::Verdict::gap_bounded_below);
    CHECK(v.gap_floor == doctest::Approx(6.0));
    CHECK(v.per_level_gap.size() == 3);
  }
  SUBCASE("growing cycles") {
    std::vector<FamilyLevel> levels;
    for (int t = 3; t <= 7; ++t) {
      auto c = FiniteCoarseSpace::cycle(Index{1} << t);
      levels.push_back({t, c, Entourage::radius(c, 1.0)});
    }
    FamilyVerdict v = family_verdict(levels, 0.05);
    CHECK(v.per_level_gap.at(7) == doctest::Approx(oracle::cycle_gap(128)));
    CHECK(v.verdict == FamilyVerdict::Verdict::gap_vanishing);
    CHECK(io::levels_csv(v).rfind("t,gap,best_ratio\n", 0) == 0);
    CHECK(io::to_json(v)["verdict"] == "gap-vanishing");
  }
  SUBCASE("single level and disconnected levels") {
    auto c = FiniteCoarseSpace::cycle(8);
    FamilyVerdict one = family_verdict({{1, c, Entourage::radius(c, 1.0)}}, 0.1);
    CHECK(one.verdict == FamilyVerdict::Verdict::gap_bounded_below);
    Eigen::MatrixXd pts(2, 1);
    pts << 0, 5;
    auto split = FiniteCoarseSpace::euclidean(pts, Eigen::VectorXd::Ones(2));
    FamilyVerdict bad = family_verdict({{1, c, Entourage::radius(c, 1.0)}, {2, split, Entourage::radius(split, 1.0)}}, 0.1);
    CHECK(bad.per_level_error.count(2) == 1);
    CHECK(bad.per_level_gap.count(2) == 0);
  }
}

TEST_CASE("Cheeger consistency") {
  suite::Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = rng.integer(6, 30);
    Eigen::MatrixXd c(n, 1);
    for (Index i = 0; i < n; ++i) c(i, 0) = static_cast<double>(i) + rng.uniform(-0.3, 0.3);
    auto s = FiniteCoarseSpace::euclidean(c, Eigen::VectorXd::Ones(n));
    Entourage e = Entourage::radius(s, 1.5);
    double gap = spectral_gap(build_laplacian(s, e), std::vector<int>(static_cast<std::size_t>(n), 0)).gap;
    FolnerSearch f = folner_search(s, e, 1e-9);
    CHECK(gap <= 2.0 * (f.best_ratio - 1.0) * max_section_mass(e) + 1e-9);
  }
}
