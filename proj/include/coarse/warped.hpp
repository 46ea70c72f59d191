#ifndef COARSE_WARPED_HPP
#define COARSE_WARPED_HPP

#include "coarse/amenability.hpp"

#include <string>
#include <vector>

namespace coarse {

/// Flat compact base manifold: the circle R/Z or the torus (R/Z)^dim.
struct BaseManifold {
  enum class Kind { circle, torus };
  Kind kind = Kind::circle;
  int dim = 1;

  static BaseManifold circle() { return {Kind::circle, 1}; }
  static BaseManifold torus(int dim) { return {Kind::torus, dim}; }
  std::string name() const { return kind == Kind::circle ? "circle" : "torus"; }
};

/// One generator s of the acting group, as a map of the base manifold.
struct Generator {
  enum class Kind { identity, rotation, automorphism };
  std::string name;
  Kind kind = Kind::identity;
  Eigen::VectorXd shift;      // rotation: x -> x + shift (mod 1)
  Eigen::MatrixXd matrix;     // automorphism: x -> M x (mod 1), integer entries, det +-1
  double lipschitz = 1.0;
  Index inverse = -1;         // index of s^-1 in the presentation

  Eigen::VectorXd apply(const Eigen::VectorXd& point) const;
  Generator inverted() const;
};

/// Finite symmetric generating set S with per-generator Lipschitz constants.
struct GroupPresentation {
  std::vector<Generator> generators;
  std::vector<std::string> relations;

  /// S = {id}.
  static GroupPresentation trivial(int dim);
  /// S = {r, r^-1} for the rotation by `shift`.
  static GroupPresentation rotation(const Eigen::VectorXd& shift);

  /// Appends missing inverses and fills the inverse indices.
  void close_under_inverses();
  /// Throws InputError (with a field path) if a generator does not fit the base.
  void validate(const BaseManifold& base) const;
  double max_lipschitz() const;
  Index size() const { return static_cast<Index>(generators.size()); }
};

/// Uniform grid net of M x {t} with spacing h = 1/density in base coordinates.
struct WarpedLevel {
  BaseManifold base;
  double t = 1.0;
  double density = 0.0;
  Index per_side = 0;
  double spacing = 0.0;  // h in base coordinates
  Eigen::MatrixXd coords;  // one row per net point, lexicographic grid order
  FiniteCoarseSpace space;  // geodesic metric of (M, t g), weights (h t)^dim

  Index size() const { return space.size(); }
  double warped_spacing() const { return spacing * t; }
  /// Nearest net point; ties resolve to the lexicographically smaller one.
  Index quantize(const Eigen::VectorXd& point) const;
  /// 2 h t, the slack carried through every quantized certificate.
  double quantization_slack() const { return 2.0 * warped_spacing(); }
};

/// Requires density >= 2 t (two net points per warped unit length) and an
/// integral number of points per side.
WarpedLevel discretize_level(const BaseManifold& base, double t, double density);

/// maps[s][x] = quantize(s . x).
std::vector<std::vector<Index>> action_maps(const WarpedLevel& level, const GroupPresentation& presentation);

struct WarpedEdge {
  Index to = 0;
  double weight = 0.0;
};

/// Augmented graph: cone edges of weight t d(x,y) (both directions) between net
/// points with t d <= cutoff, and generator edges x -> quantize(s . x) of weight 1.
struct WarpedGraph {
  std::vector<std::vector<WarpedEdge>> out;
  double cone_cutoff = 0.0;
};

/// cutoff <= 0 selects the default 3 h t.
WarpedGraph warped_graph(const WarpedLevel& level, const GroupPresentation& presentation, double cone_cutoff = 0.0);

/// Single-source shortest paths (Dijkstra, binary heap).
Eigen::VectorXd shortest_paths_from(const WarpedGraph& graph, Index source);

struct WarpedDistances {
  /// delta(x,y) = min(D(x,y), D(y,x)) over directed shortest paths D.
  Eigen::MatrixXd table;
  /// Directed all-pairs table D before symmetrization.
  Eigen::MatrixXd directed;
  double asymmetry = 0.0;
  Index unreachable_pairs = 0;
  std::vector<std::string> warnings;
};

WarpedDistances warped_distance(const WarpedLevel& level, const GroupPresentation& presentation,
                                double cone_cutoff = 0.0);

struct GroupLaplacian {
  RealOperator op;
  /// Max entry of Delta - Delta^* before symmetrization (0 for bijective maps).
  double defect = 0.0;
  bool bijective = true;
};

/// (Delta_Gamma xi)(x) = sum_{s in S} (xi(x) - xi(quantize(s^-1 . x))).
GroupLaplacian group_laplacian(const WarpedLevel& level, const GroupPresentation& presentation);

/// Schreier relation {(x, quantize(s . x))} plus the diagonal, symmetrized.
Entourage schreier_entourage(const WarpedLevel& level, const GroupPresentation& presentation);

/// Delta_M stand-in: radius-h Laplacian of the net divided by (h^dim h^2) in warped units.
RealOperator manifold_laplacian(const WarpedLevel& level);

struct WarpedSystem {
  BaseManifold base;
  double points_per_unit = 16.0;  // net points per warped unit length
  std::vector<double> ts;
  std::vector<WarpedLevel> levels;
};

/// Level t uses base density points_per_unit * t, so the warped spacing is
/// 1/points_per_unit on every level.
WarpedSystem build_warped_system(const BaseManifold& base, const std::vector<double>& ts, double points_per_unit);

struct LevelProfile {
  double t = 0.0;
  Index points = 0;
  SpectralReport spectrum;
  double defect = 0.0;
  double folner_ratio = kInfinity;
  bool folner_certified = false;
};

struct ExpanderProfile {
  std::vector<LevelProfile> levels;
  FamilyVerdict verdict;
};

/// Per level, the smallest Rayleigh quotient of Delta_Gamma over mu-mean-zero
/// functions; Folner sets are searched for the Schreier relation.
ExpanderProfile expander_profile(const WarpedSystem& system, const GroupPresentation& presentation,
                                 double gap_threshold, const SpectralOptions& options = {});

struct DecompositionReport {
  double radius = 0.0;
  int word_length = 0;
  double lipschitz = 1.0;
  double r_prime = 0.0;  // L^R R + 2 h t
  Index pairs = 0;
  Index covered = 0;
  double coverage = 0.0;
  double max_needed = 0.0;
};

/// For every same-level pair with delta(y,x) <= R, searches words g with
/// |g| <= floor(R) for t d(g . x, y) <= L^R R + 2 h t.
DecompositionReport verify_entourage_decomposition(const WarpedLevel& level, const GroupPresentation& presentation,
                                                   const WarpedDistances& distances, double radius);

}  // namespace coarse

#endif  // COARSE_WARPED_HPP
