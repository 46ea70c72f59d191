#ifndef COARSE_AMENABILITY_HPP
#define COARSE_AMENABILITY_HPP

#include "coarse/laplacian.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coarse {

struct FolnerCertificate {
  PointSet subset;
  Entourage entourage;
  double ratio = 1.0;  // mu(E_U) / mu(U)
  double epsilon_target = 0.0;

  bool valid() const { return !subset.empty() && ratio <= 1.0 + epsilon_target; }
};

/// mu(E_U) / mu(U), recomputed from scratch.
double folner_ratio(const Entourage& e, const PointSet& subset);

struct FolnerOptions {
  /// Greedy local moves; 0 means 50 * n.
  Index budget = 0;
  /// Exhaustive 2^n scan runs when n <= this.
  Index exhaustive_limit = 20;
  /// Admissible sets satisfy mu(U) <= mass_cap * mu(X).
  double mass_cap = 0.5;
};

struct FolnerSearch {
  std::optional<FolnerCertificate> certificate;
  /// Best set and ratio found over every stage that ran.
  PointSet best_subset;
  double best_ratio = kInfinity;
  /// "sweep", "greedy", "exhaustive", or "none".
  std::string stage = "none";
};

/// Searches U with mu(E_U) <= (1 + eps) mu(U): sweep sets of the Fiedler vector
/// of Delta^E, then greedy add/remove moves, then the exhaustive scan.
FolnerSearch folner_search(const FiniteCoarseSpace& space, const Entourage& e, double epsilon,
                           const FolnerOptions& options = {});

struct FamilyVerdict {
  enum class Verdict { gap_bounded_below, gap_vanishing, inconclusive };
  std::map<int, double> per_level_gap;
  std::map<int, double> per_level_folner;
  std::map<int, std::string> per_level_error;
  Verdict verdict = Verdict::inconclusive;
  double gap_floor = kInfinity;
  double gap_threshold = 0.0;
  std::string scope =
      "finite-family evidence in the standard representation; not a statement about the infinite space";
};

const char* to_string(FamilyVerdict::Verdict v);

struct FamilyLevel {
  int t = 0;
  FiniteCoarseSpace space;
  Entourage entourage;
};

/// Gap of Delta^E on each level plus a Folner search at the largest level.
FamilyVerdict family_verdict(const std::vector<FamilyLevel>& levels, double gap_threshold,
                             const FolnerOptions& options = {});

/// Shared classification: bounded below iff min gap >= threshold; vanishing iff
/// the gap at the largest level is below threshold and a Folner certificate
/// with eps = threshold exists there.
FamilyVerdict::Verdict classify_family(const std::map<int, double>& gaps, bool folner_at_largest,
                                       double gap_threshold);

}  // namespace coarse

#endif  // COARSE_AMENABILITY_HPP
