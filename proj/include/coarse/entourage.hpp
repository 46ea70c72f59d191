#ifndef COARSE_ENTOURAGE_HPP
#define COARSE_ENTOURAGE_HPP

#include "coarse/space.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

/// Relation E on the points of a FiniteCoarseSpace.
///
/// Radius(R) = {(x,y) : d(x,y) <= R} stays lazy; every algebraic operation
/// materializes an Explicit relation stored as sorted row and column lists.
/// Composition does not preserve symmetry, so Explicit relations may be
/// asymmetric; operations that need symmetry check is_symmetric().
class Entourage {
 public:
  enum class Kind { radius, explicit_relation };
  using Pair = std::pair<Index, Index>;

  static Entourage radius(const FiniteCoarseSpace& space, double r);
  static Entourage diagonal(const FiniteCoarseSpace& space);
  /// All pairs at finite distance (the whole component relation).
  static Entourage finite_distance(const FiniteCoarseSpace& space);
  /// rows[x] lists every y with (x,y) in E.
  static Entourage from_rows(const FiniteCoarseSpace& space, std::vector<PointSet> rows);
  static Entourage from_pairs(const FiniteCoarseSpace& space, const std::vector<Pair>& pairs,
                              bool symmetrize = false);
  /// Disjoint union of A_i x A_i.
  static Entourage from_blocks(const FiniteCoarseSpace& space, const std::vector<PointSet>& blocks);

  Kind kind() const { return kind_; }
  bool is_radius() const { return kind_ == Kind::radius; }
  double radius_value() const { return radius_; }
  const FiniteCoarseSpace& space() const { return space_; }
  Index size() const { return space_.size(); }

  bool contains(Index x, Index y) const;
  /// E_x = {y : (y,x) in E}.
  PointSet section(Index x) const;
  /// {y : (x,y) in E}.
  PointSet row(Index x) const;
  /// E_U = union of E_x over x in U.
  PointSet section(const PointSet& subset) const;

  bool is_symmetric() const;
  bool contains_diagonal() const;
  std::size_t pair_count() const;
  std::vector<Pair> pairs() const;

  /// Explicit copy of this relation.
  Entourage materialized() const;
  Entourage inverse() const;

  /// Short JSON-friendly description, e.g. "radius:1.5" or "explicit:42".
  std::string descriptor() const;

 private:
  struct Relation {
    std::vector<PointSet> rows;
    std::vector<PointSet> cols;
  };
  Entourage(FiniteCoarseSpace space, double r) : kind_(Kind::radius), space_(std::move(space)), radius_(r) {}
  Entourage(FiniteCoarseSpace space, std::shared_ptr<const Relation> rel)
      : kind_(Kind::explicit_relation), space_(std::move(space)), rel_(std::move(rel)) {}
  static std::shared_ptr<const Relation> build(Index n, std::vector<PointSet> rows);

  Kind kind_;
  FiniteCoarseSpace space_;
  double radius_ = 0.0;
  std::shared_ptr<const Relation> rel_;
};

/// E o F = {(x,z) : exists y, (x,y) in E and (y,z) in F}.
Entourage compose(const Entourage& e, const Entourage& f);
/// n-fold composition; n >= 1.
Entourage power(const Entourage& e, int n);
Entourage unite(const Entourage& e, const Entourage& f);
/// E union diagonal.
Entourage with_diagonal(const Entourage& e);
bool is_subset(const Entourage& e, const Entourage& f);

/// Connected components of the undirected graph with an edge for every pair of E.
/// Returns a component label per point, labels numbered by first appearance.
std::vector<int> connected_components(const Entourage& e);
int component_count(const std::vector<int>& labels);
std::vector<PointSet> components_as_sets(const std::vector<int>& labels);

/// U x U subset of E.
bool is_bounded(const Entourage& e, const PointSet& subset);

}  // namespace coarse

#endif  // COARSE_ENTOURAGE_HPP
