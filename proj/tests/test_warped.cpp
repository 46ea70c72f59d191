#include "coarse/laplacian.hpp"
#include "coarse/testing/oracles.hpp"
#include "coarse/testing/suite.hpp"
#include "coarse/warped.hpp"

#include <doctest.h>

#include <cmath>

using namespace coarse;

namespace {

GroupPresentation rotation(double a) { return GroupPresentation::rotation(Eigen::VectorXd::Constant(1, a)); }

std::vector<int> whole(Index n) { return std::vector<int>(static_cast<std::size_t>(n), 0); }

}  // namespace

TEST_CASE("discretized levels") {
  WarpedLevel c = discretize_level(BaseManifold::circle(), 1.0, 8.0);
  CHECK(c.size() == 8);
  CHECK(c.space.weight(3) == doctest::Approx(1.0 / 8));
  WarpedLevel t = discretize_level(BaseManifold::torus(2), 1.0, 4.0);
  CHECK(t.size() == 16);
  CHECK(t.space.weight(0) == doctest::Approx(1.0 / 16));
  WarpedLevel cone = discretize_level(BaseManifold::circle(), 4.0, 32.0);
  CHECK(cone.space.distance(0, 16) == doctest::Approx(2.0));
  CHECK_THROWS_WITH_AS(discretize_level(BaseManifold::circle(), 4.0, 6.0), doctest::Contains("minimum 8"), InputError);
}

TEST_CASE("quantization ties go to the lower grid index") {
  WarpedLevel c = discretize_level(BaseManifold::circle(), 1.0, 8.0);
  CHECK(c.quantize(Eigen::VectorXd::Constant(1, 0.0625)) == 0);
  CHECK(c.quantize(Eigen::VectorXd::Constant(1, 0.07)) == 1);
  CHECK(c.quantize(Eigen::VectorXd::Constant(1, 0.99)) == 0);
  CHECK(c.quantize(Eigen::VectorXd::Constant(1, -0.125)) == 7);
}

TEST_CASE("generator presentations") {
  GroupPresentation r = rotation(0.25);
  CHECK(r.size() == 2);
  CHECK(r.generators[1].shift[0] == doctest::Approx(-0.25));
  GroupPresentation half = rotation(0.5);
  CHECK(half.size() == 1);
  GroupPresentation cat;
  Generator g;
  g.name = "A";
  g.kind = Generator::Kind::automorphism;
  g.matrix = (Eigen::Matrix2d() << 2, 1, 1, 1).finished();
  cat.generators.push_back(g);
  cat.close_under_inverses();
  REQUIRE(cat.size() == 2);
  CHECK((cat.generators[1].matrix - (Eigen::Matrix2d() << 1, -1, -1, 2).finished()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(cat.validate(BaseManifold::circle()), InputError);
  GroupPresentation bad;
  g.matrix = (Eigen::Matrix2d() << 2, 0, 0, 1).finished();
  bad.generators.push_back(g);
  CHECK_THROWS_AS(bad.close_under_inverses(), InputError);
}

TEST_CASE("warped distance") {
  SUBCASE("trivial group gives the cone path metric") {
    WarpedLevel level = discretize_level(BaseManifold::circle(), 2.0, 32.0);
    WarpedDistances d = warped_distance(level, GroupPresentation::trivial(1));
    for (Index x = 0; x < level.size(); ++x)
      for (Index y = 0; y < level.size(); ++y)
        CHECK(std::abs(d.table(x, y) - level.space.distance(x, y)) <= 1e-12);
    CHECK(d.asymmetry == 0.0);
  }
  SUBCASE("rotation by one half joins antipodes") {
    WarpedLevel level = discretize_level(BaseManifold::circle(), 16.0, 64.0);
    WarpedDistances d = warped_distance(level, rotation(0.5));
    CHECK(level.space.distance(0, 32) == doctest::Approx(8.0));
    CHECK(d.table(0, 32) <= 1.0);
  }
  SUBCASE("Bellman-Ford oracle on a 64-point circle") {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    WarpedLevel level = discretize_level(BaseManifold::circle(), 8.0, 64.0);
    GroupPresentation pres = rotation(golden);
    WarpedGraph g = warped_graph(level, pres);
    WarpedDistances d = warped_distance(level, pres);
    Eigen::MatrixXd bf = oracle::bellman_ford(g);
    CHECK((d.directed.array() == bf.array()).all());
  }
  SUBCASE("metric invariants") {
    WarpedLevel level = discretize_level(BaseManifold::circle(), 4.0, 48.0);
    GroupPresentation pres = rotation(1.0 / std::sqrt(2.0));
    WarpedDistances d = warped_distance(level, pres);
    auto maps = action_maps(level, pres);
    suite::Rng rng(1);
    for (int k = 0; k < 10000; ++k) {
      Index x = rng.integer(0, 47), y = rng.integer(0, 47), z = rng.integer(0, 47);
      CHECK(d.table(x, z) <= d.table(x, y) + d.table(y, z) + 1e-12);
    }
    for (Index x = 0; x < 48; ++x) {
      for (Index y = 0; y < 48; ++y) CHECK(d.table(x, y) <= level.space.distance(x, y) * (1 + 1e-12));
      for (const auto& m : maps) CHECK(d.table(x, m[static_cast<std::size_t>(x)]) <= 1.0);
    }
    // adding a generator never increases distances
    GroupPresentation more = pres;
    Generator extra;
    extra.name = "q";
    extra.kind = Generator::Kind::rotation;
    extra.shift = Eigen::VectorXd::Constant(1, 0.3);
    more.generators.push_back(extra);
    more.close_under_inverses();
    WarpedDistances d2 = warped_distance(level, more);
    CHECK(((d2.table - d.table).array() <= 0.0).all());
  }
  SUBCASE("torus with a cat map") {
    GroupPresentation cat;
    Generator g;
    g.name = "A";
    g.kind = Generator::Kind::automorphism;
    g.matrix = (Eigen::Matrix2d() << 2, 1, 1, 1).finished();
    g.lipschitz = 2.618033988749895;
    cat.generators.push_back(g);
    cat.close_under_inverses();
    WarpedLevel level = discretize_level(BaseManifold::torus(2), 2.0, 8.0);
    WarpedDistances d = warped_distance(level, cat);
    CHECK(d.unreachable_pairs == 0);
    CHECK(group_laplacian(level, cat).bijective);
  }
}

TEST_CASE("group Laplacian") {
  SUBCASE("trivial action vanishes") {
    WarpedLevel level = discretize_level(BaseManifold::circle(), 1.0, 8.0);
    CHECK(group_laplacian(level, GroupPresentation::trivial(1)).op.dense().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("rotation by a quarter on 8 points") {
    WarpedLevel level = discretize_level(BaseManifold::circle(), 1.0, 8.0);
    GroupLaplacian gl = group_laplacian(level, rotation(0.25));
    CHECK(gl.bijective);
    CHECK(gl.defect == 0.0);
    Eigen::MatrixXd expect = 2.0 * Eigen::MatrixXd::Identity(8, 8);
    for (Index x = 0; x < 8; ++x) {
      expect(x, (x + 2) % 8) -= 1.0;
      expect(x, (x + 6) % 8) -= 1.0;
    }
    CHECK((gl.op.dense() - expect).cwiseAbs().maxCoeff() == 0.0);
    // circulant spectrum 2 - 2 cos(2 pi 2k / 8)
    std::vector<double> circ;
    for (int k = 0; k < 8; ++k) circ.push_back(2.0 - 2.0 * std::cos(2.0 * M_PI * 2.0 * k / 8.0));
    std::sort(circ.begin(), circ.end());
    Eigen::VectorXd ev = eigenvalues(gl.op);
    for (Index i = 0; i < 8; ++i) CHECK(ev[i] == doctest::Approx(circ[static_cast<std::size_t>(i)]).epsilon(1e-12));
    CHECK(gl.op.phi().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("rotation by one half is not ergodic on the net") {
    WarpedLevel level = discretize_level(BaseManifold::circle(), 1.0, 8.0);
    GroupLaplacian gl = group_laplacian(level, rotation(0.5));
    SpectralReport r = spectral_gap(gl.op, whole(8));
    CHECK(r.gap == doctest::Approx(0.0));
    Eigen::VectorXd alt(8);
    for (Index x = 0; x < 8; ++x) alt[x] = x % 2 == 0 ? 1.0 : -1.0;
    CHECK(gl.op.apply(alt).cwiseAbs().maxCoeff() == 0.0);
    // the half turn is its own inverse, so S = {r} and the antisymmetric mode sits at 2
    WarpedLevel six = discretize_level(BaseManifold::circle(), 1.0, 6.0);
    GroupLaplacian g6 = group_laplacian(six, rotation(0.5));
    Eigen::VectorXd alt6(6);
    for (Index x = 0; x < 6; ++x) alt6[x] = x % 2 == 0 ? 1.0 : -1.0;
    CHECK((g6.op.apply(alt6) - 2.0 * alt6).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("expander profiles") {
  SUBCASE("trivial action") {
    WarpedSystem sys = build_warped_system(BaseManifold::circle(), {1, 2, 4}, 8);
    ExpanderProfile p = expander_profile(sys, GroupPresentation::trivial(1), 0.05);
    for (const auto& l : p.levels) CHECK(std::abs(l.spectrum.gap) <= 1e-12);
    CHECK(p.verdict.verdict == FamilyVerdict::Verdict::gap_vanishing);
  }
  SUBCASE("irrational rotation decreases") {
    WarpedSystem sys = build_warped_system(BaseManifold::circle(), {4, 16}, 16);
    ExpanderProfile p = expander_profile(sys, rotation(1.0 / std::sqrt(2.0)), 0.05);
    CHECK(p.levels[1].points == 256);
    CHECK(p.levels[1].spectrum.gap < p.levels[0].spectrum.gap);
  }
  SUBCASE("level validation") {
    CHECK_THROWS_AS(build_warped_system(BaseManifold::circle(), {2, 1}, 8), InputError);
    CHECK_THROWS_AS(build_warped_system(BaseManifold::circle(), {1.5}, 8), InputError);
  }
}

TEST_CASE("manifold Laplacian stand-in scales like 1/t^2") {
  std::vector<double> gaps;
  for (double t : {2.0, 4.0, 8.0, 16.0}) {
    WarpedLevel level = discretize_level(BaseManifold::circle(), t, 16.0 * t);
    gaps.push_back(spectral_gap(manifold_laplacian(level), whole(level.size())).gap);
    CHECK(gaps.back() == doctest::Approx(oracle::cycle_gap(level.size()) * 256.0).epsilon(1e-10));
  }
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    CHECK(gaps[i + 1] / gaps[i] >= 0.20);
    CHECK(gaps[i + 1] / gaps[i] <= 0.30);
  }
}

TEST_CASE("entourage decomposition") {
  GroupPresentation pres = rotation(1.0 / std::sqrt(2.0));
  for (double t : {2.0, 4.0}) {
    WarpedLevel level = discretize_level(BaseManifold::circle(), t, 64.0);
    WarpedDistances d = warped_distance(level, pres);
    for (double r : {0.5, 1.5, 2.5}) {
      DecompositionReport rep = verify_entourage_decomposition(level, pres, d, r);
      CHECK(rep.coverage == 1.0);
      CHECK(rep.max_needed <= rep.r_prime);
      CHECK(rep.r_prime == doctest::Approx(r + 2.0 * t / 64.0));
    }
  }
  WarpedLevel level = discretize_level(BaseManifold::circle(), 2.0, 32.0);
  GroupPresentation trivial = GroupPresentation::trivial(1);
  WarpedDistances d = warped_distance(level, trivial);
  DecompositionReport rep = verify_entourage_decomposition(level, trivial, d, 1.7);
  CHECK(rep.coverage == 1.0);
  CHECK(rep.max_needed <= 1.7 + 1e-12);
  CHECK_THROWS_AS(verify_entourage_decomposition(level, pres, d, 25.0), InputError);
}
