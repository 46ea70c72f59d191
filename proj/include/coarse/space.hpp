#ifndef COARSE_SPACE_HPP
#define COARSE_SPACE_HPP

#include "coarse/common.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coarse {

enum class MetricKind { euclidean, torus, explicit_table };

/// Finite weighted metric space (X, d, mu) with optional level labels.
///
/// Points in different levels are at distance +inf. The underlying data is
/// shared and immutable, so copies are cheap and compare equal via same().
class FiniteCoarseSpace {
 public:
  /// Coordinates are one row per point.
  static FiniteCoarseSpace euclidean(Eigen::MatrixXd coords, Eigen::VectorXd weights,
                                     std::vector<int> levels = {}, double scale = 1.0);
  /// Flat torus [0, side)^d with coordinate-wise wraparound, distances multiplied by scale.
  static FiniteCoarseSpace torus(Eigen::MatrixXd coords, double side, Eigen::VectorXd weights,
                                 std::vector<int> levels = {}, double scale = 1.0);
  /// Full symmetric distance table; +inf entries allowed.
  static FiniteCoarseSpace from_distances(Eigen::MatrixXd distances, Eigen::VectorXd weights,
                                          std::vector<int> levels = {});

  /// Points 0..n-1 on a line (or a cycle of circumference n) with unit spacing.
  static FiniteCoarseSpace path(Index n, double weight = 1.0);
  static FiniteCoarseSpace cycle(Index n, double weight = 1.0);

  Index size() const { return static_cast<Index>(data_->weights.size()); }
  MetricKind metric_kind() const { return data_->kind; }
  double distance(Index x, Index y) const;

  double weight(Index x) const { return data_->weights[x]; }
  const Eigen::VectorXd& weights() const { return data_->weights; }
  double measure(const PointSet& subset) const;
  double total_measure() const { return data_->weights.sum(); }

  bool has_levels() const { return !data_->levels.empty(); }
  int level(Index x) const { return has_levels() ? data_->levels[static_cast<std::size_t>(x)] : 0; }
  const std::vector<int>& levels() const { return data_->levels; }

  const std::vector<std::string>& ids() const { return data_->ids; }
  void set_ids(std::vector<std::string> ids);
  Index index_of(const std::string& id) const;
  void check_index(Index x) const;

  const Eigen::MatrixXd& coords() const { return data_->coords; }
  double side() const { return data_->side; }
  double scale() const { return data_->scale; }

  /// Same space with new weights (new identity).
  FiniteCoarseSpace with_weights(Eigen::VectorXd weights) const;

  bool same(const FiniteCoarseSpace& other) const { return data_ == other.data_; }

  /// Checks d(x,z) <= d(x,y) + d(y,z) exhaustively for n <= exhaustive_limit,
  /// otherwise on `samples` seeded random triples. Throws InputError naming
  /// the first violating triple.
  void audit_metric(std::uint64_t seed = 0, Index exhaustive_limit = 200,
                    std::size_t samples = 100000) const;

 private:
  struct Data {
    MetricKind kind = MetricKind::euclidean;
    Eigen::MatrixXd coords;
    Eigen::MatrixXd table;
    Eigen::VectorXd weights;
    std::vector<int> levels;
    std::vector<std::string> ids;
    double side = 1.0;
    double scale = 1.0;
  };
  explicit FiniteCoarseSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static std::shared_ptr<const Data> validated(Data data);

  std::shared_ptr<const Data> data_;
};

/// Geodesic distance on [0, side)^d with wraparound in every coordinate.
double torus_distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                      const Eigen::Ref<const Eigen::VectorXd>& b, double side);

}  // namespace coarse

#endif  // COARSE_SPACE_HPP
