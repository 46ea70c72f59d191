#include "coarse/amenability.hpp"

#include <algorithm>
#include <numeric>

namespace coarse {

namespace {

// Maintains mu(U) and mu(E_U) under single-point insertions and removals.
class ExpansionTracker {
 public:
  ExpansionTracker(const std::vector<PointSet>& sections, const Eigen::VectorXd& mu)
      : sections_(sections), mu_(mu), count_(static_cast<std::size_t>(mu.size()), 0),
        member_(static_cast<std::size_t>(mu.size()), 0) {}

  double mass() const { return mass_; }
  double expanded_mass() const { return expanded_; }
  Index cardinality() const { return card_; }
  bool member(Index p) const { return member_[static_cast<std::size_t>(p)] != 0; }
  double ratio() const { return card_ == 0 ? kInfinity : expanded_ / mass_; }

  double expanded_after_add(Index p) const {
    double e = expanded_;
    for (Index y : sections_[static_cast<std::size_t>(p)])
      if (count_[static_cast<std::size_t>(y)] == 0) e += mu_[y];
    return e;
  }
  double expanded_after_remove(Index p) const {
    double e = expanded_;
    for (Index y : sections_[static_cast<std::size_t>(p)])
      if (count_[static_cast<std::size_t>(y)] == 1) e -= mu_[y];
    return e;
  }
  void add(Index p) {
    for (Index y : sections_[static_cast<std::size_t>(p)])
      if (count_[static_cast<std::size_t>(y)]++ == 0) expanded_ += mu_[y];
    mass_ += mu_[p];
    member_[static_cast<std::size_t>(p)] = 1;
    ++card_;
  }
  void remove(Index p) {
    for (Index y : sections_[static_cast<std::size_t>(p)])
      if (--count_[static_cast<std::size_t>(y)] == 0) expanded_ -= mu_[y];
    mass_ -= mu_[p];
    member_[static_cast<std::size_t>(p)] = 0;
    --card_;
  }
  PointSet subset() const {
    PointSet out;
    for (std::size_t x = 0; x < member_.size(); ++x)
      if (member_[x]) out.push_back(static_cast<Index>(x));
    return out;
  }

 private:
  const std::vector<PointSet>& sections_;
  const Eigen::VectorXd& mu_;
  std::vector<int> count_;
  std::vector<char> member_;
  double mass_ = 0.0;
  double expanded_ = 0.0;
  Index card_ = 0;
};

Eigen::VectorXd fiedler_vector(const FiniteCoarseSpace& space, const Entourage& e) {
  RealOperator lap = build_laplacian(space, e);
  std::vector<int> whole(static_cast<std::size_t>(space.size()), 0);
  Eigen::MatrixXd u = detail::deflation_basis(space.weights(), whole);
  const Index n = space.size();
  Eigen::VectorXd w;
  if (n <= 2000) {
    Eigen::MatrixXd b = detail::hermitian_dense(lap);
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) - u * u.transpose();
    double lift = 2.0 * max_section_mass(e) + 1.0;
    Eigen::MatrixXd c = p * b * p + lift * u * u.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver((c + c.transpose()) * 0.5);
    w = solver.eigenvectors().col(0);
  } else {
    auto b = lap.symmetric_form();
    LanczosResult lz = lanczos_smallest(b, u, 1, 1e-8, 10 * n, 0x5eed);
    w = lz.vectors.col(0);
  }
  Eigen::VectorXd v = space.weights().cwiseSqrt().cwiseInverse().asDiagonal() * w;
  // Fix the sign so the output is deterministic.
  Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  if (v[pivot] < 0) v = -v;
  return v;
}

struct Best {
  PointSet subset;
  double ratio = kInfinity;
  void offer(const ExpansionTracker& t) {
    if (t.cardinality() > 0 && t.ratio() < ratio) {
      ratio = t.ratio();
      subset = t.subset();
    }
  }
};

}  // namespace

double folner_ratio(const Entourage& e, const PointSet& subset) {
  if (subset.empty()) throw InputError("Folner ratio of the empty set");
  const FiniteCoarseSpace& space = e.space();
  return space.measure(e.section(subset)) / space.measure(subset);
}

FolnerSearch folner_search(const FiniteCoarseSpace& space, const Entourage& e, double epsilon,
                           const FolnerOptions& options) {
  if (!e.space().same(space)) throw InputError("entourage lives on a different space");
  if (!(epsilon > 0.0)) throw InputError("Folner search requires eps > 0");
  if (!e.is_symmetric()) throw InputError("Folner search requires a symmetric entourage");
  if (!e.contains_diagonal()) throw InputError("Folner search requires an entourage containing the diagonal");
  if (!(options.mass_cap > 0.0 && options.mass_cap <= 1.0)) throw InputError("mass_cap must lie in (0, 1]");

  const Index n = space.size();
  const Eigen::VectorXd& mu = space.weights();
  const double cap = options.mass_cap * space.total_measure() * (1.0 + 1e-12);
  std::vector<PointSet> sections(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x) sections[static_cast<std::size_t>(x)] = e.section(x);

  FolnerSearch out;
  auto finish_stage = [&](const Best& best, const char* stage) -> bool {
    if (best.subset.empty()) return false;
    double exact = folner_ratio(e, best.subset);
    if (exact < out.best_ratio) {
      out.best_ratio = exact;
      out.best_subset = best.subset;
    }
    if (exact <= 1.0 + epsilon) {
      out.certificate = FolnerCertificate{best.subset, e, exact, epsilon};
      out.stage = stage;
      return true;
    }
    return false;
  };

  // Sweep sets of the Fiedler vector from both ends.
  Best sweep;
  Eigen::VectorXd v = n > 1 ? fiedler_vector(space, e) : Eigen::VectorXd::Zero(n);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return v[a] < v[b]; });
  for (int direction = 0; direction < 2; ++direction) {
    ExpansionTracker tracker(sections, mu);
    for (Index k = 0; k < n; ++k) {
      Index p = direction == 0 ? order[static_cast<std::size_t>(k)] : order[static_cast<std::size_t>(n - 1 - k)];
      if (tracker.mass() + mu[p] > cap) break;
      tracker.add(p);
      sweep.offer(tracker);
    }
  }
  if (finish_stage(sweep, "sweep")) return out;

  // Greedy local moves from the best sweep set.
  Best greedy;
  {
    ExpansionTracker tracker(sections, mu);
    if (sweep.subset.empty()) {
      Index lightest = 0;
      mu.minCoeff(&lightest);
      tracker.add(lightest);
    } else {
      for (Index p : sweep.subset) tracker.add(p);
    }
    greedy.offer(tracker);
    const Index budget = options.budget > 0 ? options.budget : 50 * n;
    for (Index move = 0; move < budget; ++move) {
      double best_ratio = tracker.ratio();
      Index best_point = -1;
      for (Index p = 0; p < n; ++p) {
        double ratio;
        if (tracker.member(p)) {
          if (tracker.cardinality() == 1) continue;
          ratio = tracker.expanded_after_remove(p) / (tracker.mass() - mu[p]);
        } else {
          if (tracker.mass() + mu[p] > cap) continue;
          ratio = tracker.expanded_after_add(p) / (tracker.mass() + mu[p]);
        }
        if (ratio < best_ratio - 1e-15) {
          best_ratio = ratio;
          best_point = p;
        }
      }
      if (best_point < 0) break;
      if (tracker.member(best_point)) tracker.remove(best_point); else tracker.add(best_point);
      greedy.offer(tracker);
    }
  }
  if (finish_stage(greedy, "greedy")) return out;

  if (n <= options.exhaustive_limit) {
    Best exhaustive;
    ExpansionTracker tracker(sections, mu);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
      Index bit = static_cast<Index>(__builtin_ctzll(i));
      if (tracker.member(bit)) tracker.remove(bit); else tracker.add(bit);
      if (tracker.cardinality() > 0 && tracker.mass() <= cap) exhaustive.offer(tracker);
    }
    if (finish_stage(exhaustive, "exhaustive")) return out;
  }
  return out;
}

const char* to_string(FamilyVerdict::Verdict v) {
  switch (v) {
    case FamilyVerdict::Verdict::gap_bounded_below: return "gap-bounded-below";
    case FamilyVerdict::Verdict::gap_vanishing: return "gap-vanishing";
    case FamilyVerdict::Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

FamilyVerdict::Verdict classify_family(const std::map<int, double>& gaps, bool folner_at_largest,
                                       double gap_threshold) {
  if (gaps.empty()) return FamilyVerdict::Verdict::inconclusive;
  double floor = kInfinity;
  for (const auto& [t, g] : gaps) floor = std::min(floor, g);
  if (floor >= gap_threshold) return FamilyVerdict::Verdict::gap_bounded_below;
  if (gaps.rbegin()->second < gap_threshold && folner_at_largest) return FamilyVerdict::Verdict::gap_vanishing;
  return FamilyVerdict::Verdict::inconclusive;
}

FamilyVerdict family_verdict(const std::vector<FamilyLevel>& levels, double gap_threshold,
                             const FolnerOptions& options) {
  FamilyVerdict out;
  out.gap_threshold = gap_threshold;
  std::map<int, bool> certified;
  for (const auto& level : levels) {
    try {
      auto labels = connected_components(level.entourage);
      if (component_count(labels) != 1)
        throw InputError("level is disconnected under its entourage (" + std::to_string(component_count(labels)) +
                         " components)");
      RealOperator lap = build_laplacian(level.space, level.entourage);
      std::vector<int> whole(static_cast<std::size_t>(level.space.size()), 0);
      SpectralReport report = spectral_gap(lap, whole);
      out.per_level_gap[level.t] = report.gap;
      FolnerSearch search = folner_search(level.space, level.entourage, gap_threshold, options);
      out.per_level_folner[level.t] = search.best_ratio;
      certified[level.t] = search.certificate.has_value();
    } catch (const InputError& err) {
      out.per_level_error[level.t] = err.what();
    }
  }
  for (const auto& [t, g] : out.per_level_gap) out.gap_floor = std::min(out.gap_floor, g);
  bool folner_last = !certified.empty() && certified.rbegin()->second;
  out.verdict = classify_family(out.per_level_gap, folner_last, gap_threshold);
  return out;
}

}  // namespace coarse
