#include "coarse/blocking.hpp"

#include "coarse/geometry.hpp"

#include <algorithm>

namespace coarse {

bool BlockingCollection::covers_space() const {
  std::vector<char> seen(static_cast<std::size_t>(bound.size()), 0);
  for (const auto& block : blocks)
    for (Index x : block) seen[static_cast<std::size_t>(x)] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool BlockingCollection::is_valid() const {
  if (!(floor > 0.0)) return false;
  std::vector<char> seen(static_cast<std::size_t>(bound.size()), 0);
  for (const auto& block : blocks) {
    if (block.empty()) return false;
    for (Index x : block) {
      if (seen[static_cast<std::size_t>(x)]) return false;
      seen[static_cast<std::size_t>(x)] = 1;
    }
    if (bound.space().measure(block) < floor) return false;
    if (!is_bounded(bound, block)) return false;
  }
  return true;
}

BlockingCollection make_blocking(const FiniteCoarseSpace& space, std::vector<PointSet> blocks) {
  std::vector<char> seen(static_cast<std::size_t>(space.size()), 0);
  double floor = kInfinity;
  for (auto& block : blocks) {
    block = normalized(std::move(block));
    if (block.empty()) throw InputError("blocking collection contains an empty block");
    for (Index x : block) {
      space.check_index(x);
      if (seen[static_cast<std::size_t>(x)]) throw InputError("blocks are not disjoint at point " + std::to_string(x));
      seen[static_cast<std::size_t>(x)] = 1;
    }
    floor = std::min(floor, space.measure(block));
  }
  Entourage bound = Entourage::from_blocks(space, blocks);
  return BlockingCollection{std::move(blocks), std::move(bound), floor, {}};
}

BlockingCollection complete_blocking(const FiniteCoarseSpace& space, const Entourage& e) {
  if (!e.space().same(space)) throw InputError("entourage lives on a different space");
  if (!e.is_symmetric()) throw InputError("complete_blocking requires a symmetric entourage");
  const Index n = space.size();
  std::vector<PointSet> sec(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x) {
    sec[static_cast<std::size_t>(x)] = e.section(x);
    if (sec[static_cast<std::size_t>(x)].empty())
      throw InputError("entourage is not gordo: section of point " + std::to_string(x) + " is empty");
  }

  PointSet centers;
  std::vector<char> claimed(static_cast<std::size_t>(n), 0);  // union of chosen E_i
  for (Index x = 0; x < n; ++x) {
    const auto& s = sec[static_cast<std::size_t>(x)];
    bool disjoint = std::none_of(s.begin(), s.end(), [&](Index y) { return claimed[static_cast<std::size_t>(y)] != 0; });
    if (!disjoint) continue;
    centers.push_back(x);
    for (Index y : s) claimed[static_cast<std::size_t>(y)] = 1;
  }

  // (E o E)_i = E_{E_i} for symmetric E.
  std::vector<char> earlier(static_cast<std::size_t>(n), 0);  // union of (E o E)_{i'} for i' < i
  std::vector<PointSet> blocks;
  blocks.reserve(centers.size());
  for (Index i : centers) {
    const PointSet& own = sec[static_cast<std::size_t>(i)];
    PointSet twice = e.section(own);
    PointSet block = own;
    for (Index y : twice) {
      if (contains(own, y)) continue;
      // y in another E_{i'} (own sections are disjoint, so claimed \ own)
      if (claimed[static_cast<std::size_t>(y)] || earlier[static_cast<std::size_t>(y)]) continue;
      block.push_back(y);
    }
    for (Index y : twice) earlier[static_cast<std::size_t>(y)] = 1;
    blocks.push_back(normalized(std::move(block)));
  }

  double floor = kInfinity;
  for (const auto& b : blocks) floor = std::min(floor, space.measure(b));
  return BlockingCollection{std::move(blocks), power(e, 4), floor, std::move(centers)};
}

BlockDecomposition decompose_entourage(const Entourage& e, const BlockingCollection& base) {
  if (!e.is_symmetric()) throw InputError("decompose_entourage requires a symmetric entourage");
  if (!base.bound.space().same(e.space())) throw InputError("blocking collection lives on a different space");
  if (!base.covers_space()) throw InputError("blocking collection does not cover the space");
  const Index n = e.size();
  const std::size_t blocks = base.blocks.size();
  BlockDecomposition out;
  out.expanded.resize(blocks);
  std::vector<std::vector<std::size_t>> owners(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < blocks; ++i) {
    out.expanded[i] = set_union(base.blocks[i], e.section(base.blocks[i]));
    for (Index y : out.expanded[i]) owners[static_cast<std::size_t>(y)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> adj(blocks);
  for (const auto& list : owners)
    for (std::size_t a : list)
      for (std::size_t b : list)
        if (a != b) adj[a].push_back(b);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    out.max_degree = std::max<Index>(out.max_degree, static_cast<Index>(list.size()));
  }
  out.color.assign(blocks, -1);
  int colors = 0;
  for (std::size_t i = 0; i < blocks; ++i) {
    std::vector<char> used(static_cast<std::size_t>(colors) + 1, 0);
    for (std::size_t j : adj[i])
      if (out.color[j] >= 0) used[static_cast<std::size_t>(out.color[j])] = 1;
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    out.color[i] = c;
    colors = std::max(colors, c + 1);
  }
  std::vector<std::vector<PointSet>> members(static_cast<std::size_t>(colors));
  for (std::size_t i = 0; i < blocks; ++i) members[static_cast<std::size_t>(out.color[i])].push_back(out.expanded[i]);
  for (const auto& m : members) out.parts.push_back(Entourage::from_blocks(e.space(), m));
  return out;
}

}  // namespace coarse
