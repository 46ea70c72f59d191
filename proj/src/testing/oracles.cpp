#include "coarse/testing/oracles.hpp"

#include <algorithm>
#include <deque>

namespace coarse::oracle {

std::vector<double> cycle_spectrum(Index n) {
  std::vector<double> out;
  for (Index k = 0; k < n; ++k)
    out.push_back(2.0 - 2.0 * std::cos(2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n)));
  std::sort(out.begin(), out.end());
  return out;
}

int radius_components(const FiniteCoarseSpace& space, double r) {
  const Index n = space.size();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int count = 0;
  for (Index s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++count;
    std::deque<Index> queue{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!queue.empty()) {
      Index x = queue.front();
      queue.pop_front();
      for (Index y = 0; y < n; ++y)
        if (!seen[static_cast<std::size_t>(y)] && space.distance(x, y) <= r) {
          seen[static_cast<std::size_t>(y)] = 1;
          queue.push_back(y);
        }
    }
  }
  return count;
}

double radius_section_mass(const FiniteCoarseSpace& space, double r) {
  double best = 0.0;
  for (Index x = 0; x < space.size(); ++x) {
    double m = 0.0;
    for (Index y = 0; y < space.size(); ++y)
      if (space.distance(x, y) <= r) m += space.weight(y);
    best = std::max(best, m);
  }
  return best;
}

Eigen::MatrixXd radius_laplacian(const FiniteCoarseSpace& space, double r) {
  const Index n = space.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (x != y && space.distance(x, y) <= r) {
        a(x, y) -= space.weight(y);
        a(x, x) += space.weight(y);
      }
  return a;
}

SubsetScan exhaustive_folner(const FiniteCoarseSpace& space, double r, double epsilon, double mass_cap) {
  const Index n = space.size();
  if (n > 24) throw InputError("exhaustive scan limited to 24 points");
  std::vector<std::uint32_t> reach(static_cast<std::size_t>(n), 0);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (space.distance(x, y) <= r) reach[static_cast<std::size_t>(x)] |= 1u << y;
  auto mass = [&](std::uint32_t mask) {
    double m = 0.0;
    for (Index x = 0; x < n; ++x)
      if (mask >> x & 1u) m += space.weight(x);
    return m;
  };
  const double cap = mass_cap * space.total_measure();
  SubsetScan out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const double mu = mass(mask);
    if (mu > cap * (1.0 + 1e-12)) continue;
    std::uint32_t grown = 0;
    for (Index x = 0; x < n; ++x)
      if (mask >> x & 1u) grown |= reach[static_cast<std::size_t>(x)];
    const double ratio = mass(grown) / mu;
    out.best_ratio = std::min(out.best_ratio, ratio);
    if (!out.qualifying && ratio <= 1.0 + epsilon) {
      PointSet u;
      for (Index x = 0; x < n; ++x)
        if (mask >> x & 1u) u.push_back(x);
      out.qualifying = u;
    }
  }
  return out;
}

double exhaustive_bounded_mass(const FiniteCoarseSpace& space, double r) {
  const Index n = space.size();
  if (n > 20) throw InputError("exhaustive scan limited to 20 points");
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool bounded = true;
    double m = 0.0;
    for (Index x = 0; x < n && bounded; ++x) {
      if (!(mask >> x & 1u)) continue;
      m += space.weight(x);
      for (Index y = 0; y < n; ++y)
        if ((mask >> y & 1u) && !(space.distance(x, y) <= r)) {
          bounded = false;
          break;
        }
    }
    if (bounded) best = std::max(best, m);
  }
  return best;
}

Eigen::MatrixXd bellman_ford(const WarpedGraph& graph) {
  const auto n = static_cast<Index>(graph.out.size());
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, kInfinity);
  for (Index s = 0; s < n; ++s) {
    Eigen::VectorXd d = Eigen::VectorXd::Constant(n, kInfinity);
    d[s] = 0.0;
    for (Index round = 0; round < n; ++round) {
      bool changed = false;
      for (Index x = 0; x < n; ++x) {
        if (std::isinf(d[x])) continue;
        for (const auto& e : graph.out[static_cast<std::size_t>(x)])
          if (d[x] + e.weight < d[e.to]) {
            d[e.to] = d[x] + e.weight;
            changed = true;
          }
      }
      if (!changed) break;
    }
    dist.row(s) = d.transpose();
  }
  return dist;
}

}  // namespace coarse::oracle
