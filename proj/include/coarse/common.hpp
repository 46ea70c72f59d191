#ifndef COARSE_COMMON_HPP
#define COARSE_COMMON_HPP

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarse {

using Eigen::Index;

/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<Index>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Malformed or out-of-contract input. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independently computed quantities disagree beyond tolerance.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A certified bound or invariant fails on concrete data. Maps to exit code 1.
class PropertyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver did not reach its tolerance. Maps to exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);
bool intersects(const PointSet& a, const PointSet& b);
bool contains(const PointSet& set, Index x);
PointSet normalized(PointSet set);


}  // namespace coarse

#endif  // COARSE_COMMON_HPP
