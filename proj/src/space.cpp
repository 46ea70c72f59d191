#include "coarse/space.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace coarse {

double torus_distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                      const Eigen::Ref<const Eigen::VectorXd>& b, double side) {
  double sq = 0.0;
  for (Index k = 0; k < a.size(); ++k) {
    double delta = std::fmod(std::abs(a[k] - b[k]), side);
    delta = std::min(delta, side - delta);
    sq += delta * delta;
  }
  return std::sqrt(sq);
}

std::shared_ptr<const FiniteCoarseSpace::Data> FiniteCoarseSpace::validated(Data data) {
  const Index n = data.weights.size();
  if (n == 0) throw InputError("space has no points");
  for (Index x = 0; x < n; ++x) {
    if (!(data.weights[x] > 0.0) || !std::isfinite(data.weights[x])) {
      std::ostringstream msg;
      msg << "weight of point " << x << " must be positive and finite, got " << data.weights[x];
      throw InputError(msg.str());
    }
  }
  if (!data.levels.empty()) {
    if (static_cast<Index>(data.levels.size()) != n) throw InputError("levels length differs from point count");
    for (int t : data.levels)
      if (t < 0) throw InputError("levels must be nonnegative");
  }
  if (data.kind == MetricKind::explicit_table) {
    if (data.table.rows() != n || data.table.cols() != n) throw InputError("distance table is not n x n");
    for (Index x = 0; x < n; ++x) {
      if (data.table(x, x) != 0.0) throw InputError("distance table has nonzero diagonal at " + std::to_string(x));
      for (Index y = x + 1; y < n; ++y) {
        double d = data.table(x, y);
        if (std::isnan(d) || d < 0.0 || d != data.table(y, x))
          throw InputError("distance table entry (" + std::to_string(x) + "," + std::to_string(y) +
                           ") is negative, NaN or asymmetric");
      }
    }
  } else {
    if (data.coords.rows() != n) throw InputError("coords row count differs from point count");
    if (!data.coords.allFinite()) throw InputError("coords must be finite");
    if (!(data.scale > 0.0)) throw InputError("metric scale must be positive");
    if (data.kind == MetricKind::torus && !(data.side > 0.0)) throw InputError("torus side must be positive");
  }
  if (data.ids.empty()) {
    data.ids.reserve(static_cast<std::size_t>(n));
    for (Index x = 0; x < n; ++x) data.ids.push_back(std::to_string(x));
  } else if (static_cast<Index>(data.ids.size()) != n) {
    throw InputError("point id count differs from point count");
  }
  return std::make_shared<const Data>(std::move(data));
}

FiniteCoarseSpace FiniteCoarseSpace::euclidean(Eigen::MatrixXd coords, Eigen::VectorXd weights,
                                               std::vector<int> levels, double scale) {
  Data d;
  d.kind = MetricKind::euclidean;
  d.coords = std::move(coords);
  d.weights = std::move(weights);
  d.levels = std::move(levels);
  d.scale = scale;
  return FiniteCoarseSpace(validated(std::move(d)));
}

FiniteCoarseSpace FiniteCoarseSpace::torus(Eigen::MatrixXd coords, double side, Eigen::VectorXd weights,
                                           std::vector<int> levels, double scale) {
  Data d;
  d.kind = MetricKind::torus;
  d.coords = std::move(coords);
  d.side = side;
  d.weights = std::move(weights);
  d.levels = std::move(levels);
  d.scale = scale;
  return FiniteCoarseSpace(validated(std::move(d)));
}

FiniteCoarseSpace FiniteCoarseSpace::from_distances(Eigen::MatrixXd distances, Eigen::VectorXd weights,
                                                    std::vector<int> levels) {
  Data d;
  d.kind = MetricKind::explicit_table;
  d.table = std::move(distances);
  d.weights = std::move(weights);
  d.levels = std::move(levels);
  return FiniteCoarseSpace(validated(std::move(d)));
}

FiniteCoarseSpace FiniteCoarseSpace::path(Index n, double weight) {
  Eigen::MatrixXd coords(n, 1);
  for (Index i = 0; i < n; ++i) coords(i, 0) = static_cast<double>(i);
  return euclidean(std::move(coords), Eigen::VectorXd::Constant(n, weight));
}

FiniteCoarseSpace FiniteCoarseSpace::cycle(Index n, double weight) {
  Eigen::MatrixXd coords(n, 1);
  for (Index i = 0; i < n; ++i) coords(i, 0) = static_cast<double>(i);
  return torus(std::move(coords), static_cast<double>(n), Eigen::VectorXd::Constant(n, weight));
}

double FiniteCoarseSpace::distance(Index x, Index y) const {
  const Data& d = *data_;
  if (!d.levels.empty() && d.levels[static_cast<std::size_t>(x)] != d.levels[static_cast<std::size_t>(y)])
    return kInfinity;
  if (x == y) return 0.0;
  switch (d.kind) {
    case MetricKind::euclidean:
      return d.scale * (d.coords.row(x) - d.coords.row(y)).norm();
    case MetricKind::torus:
      return d.scale * torus_distance(d.coords.row(x).transpose(), d.coords.row(y).transpose(), d.side);
    case MetricKind::explicit_table:
      return d.table(x, y);
  }
  return kInfinity;
}

double FiniteCoarseSpace::measure(const PointSet& subset) const {
  double total = 0.0;
  for (Index x : subset) total += data_->weights[x];
  return total;
}

void FiniteCoarseSpace::set_ids(std::vector<std::string> ids) {
  Data copy = *data_;
  copy.ids = std::move(ids);
  data_ = validated(std::move(copy));
}

Index FiniteCoarseSpace::index_of(const std::string& id) const {
  const auto& ids = data_->ids;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<Index>(i);
  throw InputError("unknown point id '" + id + "'");
}

void FiniteCoarseSpace::check_index(Index x) const {
  if (x < 0 || x >= size()) throw InputError("unknown point index " + std::to_string(x));
}

FiniteCoarseSpace FiniteCoarseSpace::with_weights(Eigen::VectorXd weights) const {
  Data copy = *data_;
  if (weights.size() != size()) throw InputError("weight vector length differs from point count");
  copy.weights = std::move(weights);
  return FiniteCoarseSpace(validated(std::move(copy)));
}

void FiniteCoarseSpace::audit_metric(std::uint64_t seed, Index exhaustive_limit, std::size_t samples) const {
  const Index n = size();
  auto check = [&](Index x, Index y, Index z) {
    double dxz = distance(x, z);
    double bound = distance(x, y) + distance(y, z);
    if (dxz > bound * (1.0 + 1e-12) + 1e-12) {
      std::ostringstream msg;
      msg << "triangle inequality violated at (" << x << "," << y << "," << z << "): d(x,z)=" << dxz
          << " > d(x,y)+d(y,z)=" << bound;
      throw InputError(msg.str());
    }
  };
  if (n <= exhaustive_limit) {
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = x + 1; z < n; ++z) check(x, y, z);
    return;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s) check(pick(rng), pick(rng), pick(rng));
}

}  // namespace coarse
