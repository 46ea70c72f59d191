#include "coarse/geometry.hpp"

#include <algorithm>
#include <functional>

namespace coarse {

namespace {

// Max-weight clique on the vertex list `verts` (local indices into adjacency).
struct CliqueSearch {
  const std::vector<std::vector<char>>& adj;
  const std::vector<double>& w;
  double best = 0.0;
  std::vector<Index> best_set;
  std::vector<Index> current;

  void run(std::vector<Index> candidates, double weight) {
    if (weight > best) {
      best = weight;
      best_set = current;
    }
    double remaining = 0.0;
    for (Index v : candidates) remaining += w[static_cast<std::size_t>(v)];
    while (!candidates.empty()) {
      if (weight + remaining <= best) return;
      Index v = candidates.back();
      candidates.pop_back();
      remaining -= w[static_cast<std::size_t>(v)];
      std::vector<Index> next;
      for (Index u : candidates)
        if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) next.push_back(u);
      current.push_back(v);
      run(std::move(next), weight + w[static_cast<std::size_t>(v)]);
      current.pop_back();
    }
  }
};

}  // namespace

UniformBound certify_uniformly_bounded(const FiniteCoarseSpace& space, const Entourage& e) {
  if (!e.space().same(space)) throw InputError("entourage lives on a different space");
  const auto labels = connected_components(e);
  const auto comps = components_as_sets(labels);
  UniformBound result;
  bool exact = std::all_of(comps.begin(), comps.end(),
                           [](const PointSet& c) { return static_cast<Index>(c.size()) <= kExactCliqueLimit; });
  if (exact) {
    result.method = UniformBound::Method::exact_clique;
    for (const auto& comp : comps) {
      std::vector<Index> local;
      for (Index x : comp)
        if (e.contains(x, x)) local.push_back(x);
      const std::size_t m = local.size();
      std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
      std::vector<double> w(m);
      for (std::size_t i = 0; i < m; ++i) {
        w[i] = space.weight(local[i]);
        for (std::size_t j = 0; j < m; ++j)
          adj[i][j] = e.contains(local[i], local[j]) && e.contains(local[j], local[i]);
      }
      CliqueSearch search{adj, w, 0.0, {}, {}};
      std::vector<Index> cand(m);
      for (std::size_t i = 0; i < m; ++i) cand[i] = static_cast<Index>(i);
      search.run(cand, 0.0);
      if (search.best > result.bound) {
        result.bound = search.best;
        result.witness.clear();
        for (Index v : search.best_set) result.witness.push_back(local[static_cast<std::size_t>(v)]);
        result.witness = normalized(std::move(result.witness));
      }
    }
    return result;
  }
  result.method = UniformBound::Method::section_bound;
  std::vector<PointSet> sections(static_cast<std::size_t>(space.size()));
  for (Index z = 0; z < space.size(); ++z) sections[static_cast<std::size_t>(z)] = e.section(z);
  for (Index x = 0; x < space.size(); ++x) {
    // (E o E^-1)_x = {y : exists z, (y,z) in E, (x,z) in E}
    PointSet ball;
    for (Index z : e.row(x)) ball = set_union(ball, sections[static_cast<std::size_t>(z)]);
    double m = space.measure(ball);
    if (m > result.bound) {
      result.bound = m;
      result.witness = std::move(ball);
    }
  }
  return result;
}

GordoBound certify_gordo(const FiniteCoarseSpace& space, const Entourage& e) {
  if (!e.space().same(space)) throw InputError("entourage lives on a different space");
  GordoBound result{kInfinity, 0};
  for (Index x = 0; x < space.size(); ++x) {
    double m = space.measure(e.section(x));
    if (m < result.epsilon) result = {m, x};
  }
  return result;
}

CoarseNet coarse_net(const FiniteCoarseSpace& space, const Entourage& f) {
  if (!f.is_symmetric()) throw InputError("coarse_net requires a symmetric F");
  CoarseNet net;
  const Index n = space.size();
  net.witness.assign(static_cast<std::size_t>(n), -1);
  for (Index x = 0; x < n; ++x) {
    bool separated = true;
    for (Index y : net.points)
      if (f.contains(x, y)) {
        separated = false;
        break;
      }
    if (separated) net.points.push_back(x);
  }
  for (Index x = 0; x < n; ++x) {
    if (contains(net.points, x)) {
      net.witness[static_cast<std::size_t>(x)] = x;
      continue;
    }
    for (Index y : net.points)
      if (f.contains(x, y)) {
        net.witness[static_cast<std::size_t>(x)] = y;
        break;
      }
  }
  return net;
}

std::vector<PointSet> section_cover(const Entourage& f, const Entourage& e, Index x) {
  PointSet ex = e.section(x);
  std::vector<Index> order;
  if (contains(ex, x)) order.push_back(x);
  for (Index y : ex)
    if (y != x) order.push_back(y);
  std::vector<Index> net;
  for (Index y : order) {
    bool separated = std::none_of(net.begin(), net.end(), [&](Index z) { return f.contains(y, z); });
    if (separated) net.push_back(y);
  }
  std::vector<PointSet> cover;
  cover.reserve(net.size());
  for (Index y : net) {
    PointSet part{y};
    for (Index z : ex)
      if (f.contains(z, y)) part.push_back(z);
    cover.push_back(normalized(std::move(part)));
  }
  return cover;
}

CoveringCertificate covering_bound(const FiniteCoarseSpace& space, const Entourage& f, const Entourage& e) {
  if (!f.is_symmetric()) throw InputError("covering_bound requires a symmetric F");
  if (!f.space().same(space) || !e.space().same(space)) throw InputError("entourage lives on a different space");
  CoveringCertificate cert;
  for (Index x = 0; x < space.size(); ++x) {
    auto cover = section_cover(f, e, x);
    if (static_cast<Index>(cover.size()) > cert.count) {
      cert.count = static_cast<Index>(cover.size());
      cert.worst_point = x;
      cert.cover = std::move(cover);
    }
  }
  return cert;
}

}  // namespace coarse
