#include "coarse/warped.hpp"

#include "coarse/laplacian.hpp"
#include "coarse/spectral.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <queue>
#include <sstream>

namespace coarse {

namespace {

Eigen::VectorXd wrap_unit(Eigen::VectorXd p) {
  for (Index k = 0; k < p.size(); ++k) {
    p[k] = std::fmod(p[k], 1.0);
    if (p[k] < 0.0) p[k] += 1.0;
    if (p[k] >= 1.0) p[k] = 0.0;
  }
  return p;
}

bool is_integral(const Eigen::MatrixXd& m) {
  return ((m.array() - m.array().round()).abs() < 1e-9).all();
}

}  // namespace

Eigen::VectorXd Generator::apply(const Eigen::VectorXd& point) const {
  switch (kind) {
    case Kind::identity: return wrap_unit(point);
    case Kind::rotation: return wrap_unit(point + shift);
    case Kind::automorphism: return wrap_unit(matrix * point);
  }
  return point;
}

Generator Generator::inverted() const {
  Generator g = *this;
  g.name = name + "^-1";
  g.inverse = -1;
  switch (kind) {
    case Kind::identity: g.name = name; break;
    case Kind::rotation: g.shift = -shift; break;
    case Kind::automorphism: {
      Eigen::MatrixXd inv = matrix.inverse().array().round().matrix();
      g.matrix = inv;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(inv);
      g.lipschitz = svd.singularValues()(0);
      break;
    }
  }
  return g;
}

GroupPresentation GroupPresentation::trivial(int dim) {
  Generator id;
  id.name = "id";
  id.kind = Generator::Kind::identity;
  id.shift = Eigen::VectorXd::Zero(dim);
  id.inverse = 0;
  GroupPresentation p;
  p.generators.push_back(id);
  return p;
}

GroupPresentation GroupPresentation::rotation(const Eigen::VectorXd& shift) {
  Generator r;
  r.name = "r";
  r.kind = Generator::Kind::rotation;
  r.shift = shift;
  r.lipschitz = 1.0;
  GroupPresentation p;
  p.generators.push_back(r);
  p.close_under_inverses();
  return p;
}

void GroupPresentation::close_under_inverses() {
  auto same_map = [](const Generator& a, const Generator& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Generator::Kind::identity: return true;
      case Generator::Kind::rotation: {
        Eigen::VectorXd d = a.shift - b.shift;
        for (Index k = 0; k < d.size(); ++k) {
          double f = d[k] - std::round(d[k]);
          if (std::abs(f) > 1e-12) return false;
        }
        return true;
      }
      case Generator::Kind::automorphism: return (a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-9;
    }
    return false;
  };
  const std::size_t original = generators.size();
  for (std::size_t i = 0; i < original; ++i) {
    if (generators[i].kind == Generator::Kind::automorphism) {
      const auto& m = generators[i].matrix;
      if (m.rows() != m.cols() || !is_integral(m) || std::abs(std::abs(m.determinant()) - 1.0) > 1e-9)
        throw InputError("generators[" + std::to_string(i) + "].matrix must be square, integral, with det +-1");
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    Generator inv = generators[i].inverted();
    Index found = -1;
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (same_map(generators[j], inv)) {
        found = static_cast<Index>(j);
        break;
      }
    if (found < 0) {
      inv.inverse = static_cast<Index>(i);
      generators.push_back(inv);
      found = static_cast<Index>(generators.size() - 1);
    }
    generators[i].inverse = found;
  }
}

void GroupPresentation::validate(const BaseManifold& base) const {
  if (generators.empty()) throw InputError("generators: at least one generator is required");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Generator& g = generators[i];
    const std::string path = "generators[" + std::to_string(i) + "]";
    if (g.inverse < 0 || g.inverse >= size()) throw InputError(path + ": missing inverse");
    if (!(g.lipschitz > 0.0) || !std::isfinite(g.lipschitz)) throw InputError(path + ".lipschitz must be positive");
    if (g.kind == Generator::Kind::rotation && g.shift.size() != base.dim)
      throw InputError(path + ".shift must have " + std::to_string(base.dim) + " components");
    if (g.kind == Generator::Kind::automorphism) {
      if (base.kind != BaseManifold::Kind::torus) throw InputError(path + ": automorphisms need a torus base");
      if (g.matrix.rows() != base.dim || g.matrix.cols() != base.dim)
        throw InputError(path + ".matrix must be " + std::to_string(base.dim) + "x" + std::to_string(base.dim));
    }
  }
}

double GroupPresentation::max_lipschitz() const {
  double l = 1.0;
  for (const auto& g : generators) l = std::max(l, g.lipschitz);
  return l;
}

Index WarpedLevel::quantize(const Eigen::VectorXd& point) const {
  Eigen::VectorXd p = wrap_unit(point);
  Index index = 0;
  for (Index k = 0; k < p.size(); ++k) {
    double q = p[k] / spacing;
    double lower = std::floor(q);
    double frac = q - lower;
    auto below = static_cast<Index>(lower) % per_side;
    Index above = (below + 1) % per_side;
    Index pick;
    if (frac < 0.5) pick = below;
    else if (frac > 0.5) pick = above;
    else pick = std::min(below, above);
    index = index * per_side + pick;
  }
  return index;
}

WarpedLevel discretize_level(const BaseManifold& base, double t, double density) {
  if (!(t > 0.0)) throw InputError("level t must be positive");
  if (base.dim < 1) throw InputError("base dimension must be positive");
  if (density < 2.0 * t) {
    std::ostringstream msg;
    msg << "density " << density << " is below the minimum " << 2.0 * t << " for level t=" << t;
    throw InputError(msg.str());
  }
  const double rounded = std::round(density);
  if (std::abs(rounded - density) > 1e-9) throw InputError("density must give an integral number of points per side");
  const auto per_side = static_cast<Index>(rounded);
  const double spacing = 1.0 / rounded;
  Index n = 1;
  for (int k = 0; k < base.dim; ++k) n *= per_side;
  Eigen::MatrixXd coords(n, base.dim);
  for (Index i = 0; i < n; ++i) {
    Index rest = i;
    for (int k = base.dim - 1; k >= 0; --k) {
      coords(i, k) = static_cast<double>(rest % per_side) * spacing;
      rest /= per_side;
    }
  }
  const double cell = std::pow(spacing * t, base.dim);
  FiniteCoarseSpace space = FiniteCoarseSpace::torus(coords, 1.0, Eigen::VectorXd::Constant(n, cell), {}, t);
  WarpedLevel level{base, t, density, per_side, spacing, coords, space};
  return level;
}

std::vector<std::vector<Index>> action_maps(const WarpedLevel& level, const GroupPresentation& presentation) {
  presentation.validate(level.base);
  std::vector<std::vector<Index>> maps(presentation.generators.size());
  for (std::size_t s = 0; s < maps.size(); ++s) {
    maps[s].resize(static_cast<std::size_t>(level.size()));
    for (Index x = 0; x < level.size(); ++x)
      maps[s][static_cast<std::size_t>(x)] =
          level.quantize(presentation.generators[s].apply(level.coords.row(x).transpose()));
  }
  return maps;
}

WarpedGraph warped_graph(const WarpedLevel& level, const GroupPresentation& presentation, double cone_cutoff) {
  WarpedGraph graph;
  graph.cone_cutoff = cone_cutoff > 0.0 ? cone_cutoff : 3.0 * level.warped_spacing() * (1.0 + 1e-12);
  const Index n = level.size();
  graph.out.resize(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y) {
      double d = level.space.distance(x, y);
      if (d <= graph.cone_cutoff) {
        graph.out[static_cast<std::size_t>(x)].push_back({y, d});
        graph.out[static_cast<std::size_t>(y)].push_back({x, d});
      }
    }
  auto maps = action_maps(level, presentation);
  for (const auto& map : maps)
    for (Index x = 0; x < n; ++x) {
      Index y = map[static_cast<std::size_t>(x)];
      if (y != x) graph.out[static_cast<std::size_t>(x)].push_back({y, 1.0});
    }
  return graph;
}

Eigen::VectorXd shortest_paths_from(const WarpedGraph& graph, Index source) {
  const Index n = static_cast<Index>(graph.out.size());
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(n, kInfinity);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d > dist[x]) continue;
    for (const auto& edge : graph.out[static_cast<std::size_t>(x)]) {
      double candidate = d + edge.weight;
      if (candidate < dist[edge.to]) {
        dist[edge.to] = candidate;
        heap.emplace(candidate, edge.to);
      }
    }
  }
  return dist;
}

WarpedDistances warped_distance(const WarpedLevel& level, const GroupPresentation& presentation, double cone_cutoff) {
  WarpedGraph graph = warped_graph(level, presentation, cone_cutoff);
  const Index n = level.size();
  WarpedDistances out;
  out.directed.resize(n, n);
  for (Index s = 0; s < n; ++s) out.directed.row(s) = shortest_paths_from(graph, s).transpose();
  out.table = out.directed.cwiseMin(out.directed.transpose());
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      double a = out.directed(x, y), b = out.directed(y, x);
      if (std::isinf(out.table(x, y))) {
        if (x < y) ++out.unreachable_pairs;
      } else if (std::isfinite(a) && std::isfinite(b)) {
        out.asymmetry = std::max(out.asymmetry, std::abs(a - b));
      } else {
        out.asymmetry = kInfinity;
      }
    }
  if (out.unreachable_pairs > 0)
    out.warnings.push_back(std::to_string(out.unreachable_pairs) + " pairs are disconnected in the augmented graph");
  return out;
}

GroupLaplacian group_laplacian(const WarpedLevel& level, const GroupPresentation& presentation) {
  auto maps = action_maps(level, presentation);
  const Index n = level.size();
  const double count = static_cast<double>(presentation.generators.size());
  Eigen::MatrixXd a = count * Eigen::MatrixXd::Identity(n, n);
  GroupLaplacian out{RealOperator(RealOperator::Sparse(n, n), Entourage::diagonal(level.space)), 0.0, true};
  for (std::size_t s = 0; s < maps.size(); ++s) {
    const auto& inv = maps[static_cast<std::size_t>(presentation.generators[s].inverse)];
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (Index x = 0; x < n; ++x) {
      Index y = inv[static_cast<std::size_t>(x)];
      a(x, y) -= 1.0;
      if (hit[static_cast<std::size_t>(y)]) out.bijective = false;
      hit[static_cast<std::size_t>(y)] = 1;
    }
  }
  // mu is uniform on a level, so the mu-adjoint is the transpose.
  out.defect = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (out.defect > 0.0) a = 0.5 * (a + a.transpose());
  out.op = RealOperator::from_dense(a, schreier_entourage(level, presentation));
  return out;
}

Entourage schreier_entourage(const WarpedLevel& level, const GroupPresentation& presentation) {
  auto maps = action_maps(level, presentation);
  std::vector<Entourage::Pair> pairs;
  for (Index x = 0; x < level.size(); ++x) pairs.emplace_back(x, x);
  for (const auto& map : maps)
    for (Index x = 0; x < level.size(); ++x) pairs.emplace_back(x, map[static_cast<std::size_t>(x)]);
  return Entourage::from_pairs(level.space, pairs, true);
}

RealOperator manifold_laplacian(const WarpedLevel& level) {
  const double h = level.warped_spacing();
  Entourage e = Entourage::radius(level.space, h * (1.0 + 1e-9));
  RealOperator lap = build_laplacian(level.space, e);
  return lap.scaled(1.0 / (std::pow(h, level.base.dim) * h * h));
}

WarpedSystem build_warped_system(const BaseManifold& base, const std::vector<double>& ts, double points_per_unit) {
  if (ts.empty()) throw InputError("levels: at least one level is required");
  if (!(points_per_unit >= 2.0)) throw InputError("points_per_unit must be at least 2");
  WarpedSystem system{base, points_per_unit, ts, {}};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double t = ts[i];
    if (!(t >= 1.0) || std::abs(t - std::round(t)) > 1e-12)
      throw InputError("levels[" + std::to_string(i) + "] must be a positive integer");
    if (i > 0 && !(t > ts[i - 1])) throw InputError("levels must be strictly increasing");
    system.levels.push_back(discretize_level(base, t, points_per_unit * t));
  }
  return system;
}

ExpanderProfile expander_profile(const WarpedSystem& system, const GroupPresentation& presentation,
                                 double gap_threshold, const SpectralOptions& options) {
  ExpanderProfile out;
  out.verdict.gap_threshold = gap_threshold;
  bool folner_last = false;
  for (const auto& level : system.levels) {
    LevelProfile lp;
    lp.t = level.t;
    lp.points = level.size();
    GroupLaplacian gl = group_laplacian(level, presentation);
    lp.defect = gl.defect;
    std::vector<int> whole(static_cast<std::size_t>(level.size()), 0);
    lp.spectrum = spectral_gap(gl.op, whole, options);
    FolnerSearch search = folner_search(level.space, schreier_entourage(level, presentation), gap_threshold);
    lp.folner_ratio = search.best_ratio;
    lp.folner_certified = search.certificate.has_value();
    const int key = static_cast<int>(std::lround(level.t));
    out.verdict.per_level_gap[key] = lp.spectrum.gap;
    out.verdict.per_level_folner[key] = lp.folner_ratio;
    folner_last = lp.folner_certified;
    out.levels.push_back(std::move(lp));
  }
  for (const auto& [t, g] : out.verdict.per_level_gap) out.verdict.gap_floor = std::min(out.verdict.gap_floor, g);
  out.verdict.verdict = classify_family(out.verdict.per_level_gap, folner_last, gap_threshold);
  return out;
}

DecompositionReport verify_entourage_decomposition(const WarpedLevel& level, const GroupPresentation& presentation,
                                                   const WarpedDistances& distances, double radius) {
  if (!(radius >= 0.0)) throw InputError("radius must be nonnegative");
  DecompositionReport report;
  report.radius = radius;
  report.word_length = static_cast<int>(std::floor(radius));
  const double words = std::pow(static_cast<double>(presentation.size()), report.word_length);
  if (words > 1e6)
    throw InputError("word enumeration |S|^floor(R) = " + std::to_string(words) + " exceeds 1e6; use a smaller R");
  report.lipschitz = presentation.max_lipschitz();
  report.r_prime = std::pow(report.lipschitz, radius) * radius + level.quantization_slack();
  const Index n = level.size();
  if (distances.table.rows() != n) throw InputError("distance table does not match the level");
  auto maps = action_maps(level, presentation);

  for (Index x = 0; x < n; ++x) {
    // images of x under all words of length <= floor(R)
    std::vector<char> reach(static_cast<std::size_t>(n), 0);
    std::vector<Index> frontier{x};
    reach[static_cast<std::size_t>(x)] = 1;
    std::vector<Index> images{x};
    for (int len = 0; len < report.word_length; ++len) {
      std::vector<Index> next;
      for (Index p : frontier)
        for (const auto& map : maps) {
          Index q = map[static_cast<std::size_t>(p)];
          if (!reach[static_cast<std::size_t>(q)]) {
            reach[static_cast<std::size_t>(q)] = 1;
            next.push_back(q);
            images.push_back(q);
          }
        }
      frontier = std::move(next);
    }
    for (Index y = 0; y < n; ++y) {
      if (!(distances.table(y, x) <= radius)) continue;
      ++report.pairs;
      double needed = kInfinity;
      for (Index g : images) needed = std::min(needed, level.space.distance(g, y));
      report.max_needed = std::max(report.max_needed, needed);
      if (needed <= report.r_prime) ++report.covered;
    }
  }
  report.coverage = report.pairs == 0 ? 1.0 : static_cast<double>(report.covered) / static_cast<double>(report.pairs);
  return report;
}

}  // namespace coarse
