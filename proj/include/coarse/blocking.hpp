#ifndef COARSE_BLOCKING_HPP
#define COARSE_BLOCKING_HPP

#include "coarse/supported_operator.hpp"

#include <vector>

namespace coarse {

/// Pairwise disjoint blocks A_i, each bound-bounded, each of measure >= floor.
struct BlockingCollection {
  std::vector<PointSet> blocks;
  Entourage bound;
  double floor = 0.0;
  /// Index i of the section E_i each block grew from (empty when built by hand).
  std::vector<Index> centers;

  Entourage in_blocks() const { return Entourage::from_blocks(bound.space(), blocks); }
  bool covers_space() const;
  /// Checks disjointness, A_i x A_i in bound, and mu(A_i) >= floor > 0.
  bool is_valid() const;
};

/// Collection with floor = min_i mu(A_i) and bound = union of A_i x A_i.
BlockingCollection make_blocking(const FiniteCoarseSpace& space, std::vector<PointSet> blocks);

/// Blocking collection with union X built from a gordo symmetric E.
///
/// Centers I are chosen greedily in ascending index order so that the sections
/// E_i are pairwise disjoint; then, in the same order,
///   A_i = E_i  u  ((E o E)_i \ (U_{i' != i} E_{i'}  u  U_{i' < i} (E o E)_{i'})).
/// Blocks are E^{o4}-bounded (recorded as `bound`) and mu(A_i) >= min_x mu(E_x).
BlockingCollection complete_blocking(const FiniteCoarseSpace& space, const Entourage& e);

struct BlockDecomposition {
  /// expanded[i] = A_i u E_{A_i}.
  std::vector<PointSet> expanded;
  /// color[i] in 0..parts.size()-1; adjacent blocks never share a color.
  std::vector<int> color;
  /// parts[k] = disjoint union of expanded[i] x expanded[i] over color(i) = k.
  std::vector<Entourage> parts;
  Index max_degree = 0;

  Index part_count() const { return static_cast<Index>(parts.size()); }
};

/// Covers a symmetric E by finitely many controlled sets in blocks: blocks i, j
/// interfere when their expansions meet, the interference graph is colored
/// first-fit in index order, and each color class gives one part.
BlockDecomposition decompose_entourage(const Entourage& e, const BlockingCollection& base);

template <typename Scalar>
struct OperatorDecomposition {
  std::vector<SupportedOperator<Scalar>> parts;
  std::vector<typename SupportedOperator<Scalar>::Vector> phis;
  BlockDecomposition blocks;
};

/// T = T_1 + ... + T_N with T_k = sum over blocks i of color k of pi_{A_i} T.
template <typename Scalar>
OperatorDecomposition<Scalar> decompose_operator(const SupportedOperator<Scalar>& t, const BlockingCollection& base) {
  using Op = SupportedOperator<Scalar>;
  using Sparse = typename Op::Sparse;
  const Entourage& support = t.support();
  Entourage e = support.is_symmetric() ? support : unite(support, support.inverse());
  OperatorDecomposition<Scalar> out;
  out.blocks = decompose_entourage(e, base);
  const Index n = t.size();
  std::vector<int> row_color(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < base.blocks.size(); ++i)
    for (Index x : base.blocks[i]) row_color[static_cast<std::size_t>(x)] = out.blocks.color[i];
  const Index parts = out.blocks.part_count();
  std::vector<std::vector<Eigen::Triplet<Scalar>>> trips(static_cast<std::size_t>(parts));
  const Sparse& a = t.action();
  for (Index x = 0; x < n; ++x)
    for (typename Sparse::InnerIterator it(a, x); it; ++it)
      trips[static_cast<std::size_t>(row_color[static_cast<std::size_t>(x)])].emplace_back(x, it.col(), it.value());
  for (Index k = 0; k < parts; ++k) {
    Sparse part(n, n);
    part.setFromTriplets(trips[static_cast<std::size_t>(k)].begin(), trips[static_cast<std::size_t>(k)].end());
    out.parts.emplace_back(std::move(part), out.blocks.parts[static_cast<std::size_t>(k)]);
    out.phis.push_back(out.parts.back().phi());
  }
  return out;
}

}  // namespace coarse

#endif  // COARSE_BLOCKING_HPP
