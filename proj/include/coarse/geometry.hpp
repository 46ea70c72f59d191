#ifndef COARSE_GEOMETRY_HPP
#define COARSE_GEOMETRY_HPP

#include "coarse/entourage.hpp"

#include <map>
#include <string>
#include <vector>

namespace coarse {

/// Exact max-weight clique search is used while every component of the
/// E-graph has at most this many points.
inline constexpr Index kExactCliqueLimit = 25;

struct UniformBound {
  enum class Method { exact_clique, section_bound };
  double bound = 0.0;
  Method method = Method::exact_clique;
  /// Exact: a heaviest E-bounded set. Section bound: (E o E^-1)_x for the maximizing x.
  PointSet witness;
};

/// Least C with mu(U) <= C for every E-bounded U (exact on small components,
/// sound upper bound max_x mu((E o E^-1)_x) otherwise).
UniformBound certify_uniformly_bounded(const FiniteCoarseSpace& space, const Entourage& e);

struct GordoBound {
  double epsilon = 0.0;
  Index argmin = 0;
};

/// epsilon = min_x mu(E_x).
GordoBound certify_gordo(const FiniteCoarseSpace& space, const Entourage& e);

struct CoarseNet {
  PointSet points;
  /// witness[x] is a net point y with (x,y) in F (x itself for net points).
  std::vector<Index> witness;
};

/// Greedy maximal F-separated subset in ascending index order.
CoarseNet coarse_net(const FiniteCoarseSpace& space, const Entourage& f);

struct CoveringCertificate {
  Index count = 0;
  Index worst_point = 0;
  /// Cover of E_{worst_point}; every set is (F o F)-bounded.
  std::vector<PointSet> cover;
  std::string cover_bound = "F o F";
};

/// N such that every E_x is covered by N sets built from a greedy F-net of E_x.
/// The net inside E_x is seeded with x itself, then ascending index order.
CoveringCertificate covering_bound(const FiniteCoarseSpace& space, const Entourage& f, const Entourage& e);

/// Cover of E_x by the F-sections of a greedy F-net inside E_x.
std::vector<PointSet> section_cover(const Entourage& f, const Entourage& e, Index x);

/// Replayable record of bounded-geometry constants, keyed by entourage descriptor.
struct GeometryCertificate {
  std::map<std::string, Index> covering_n;
  std::map<std::string, double> upper_c;
  std::string gordo_entourage;
  double gordo_epsilon = 0.0;
};

}  // namespace coarse

#endif  // COARSE_GEOMETRY_HPP
