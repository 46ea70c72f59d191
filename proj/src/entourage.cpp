#include "coarse/entourage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace coarse {

namespace {

void require_same_space(const Entourage& e, const Entourage& f) {
  if (!e.space().same(f.space())) throw InputError("entourages live on different spaces");
}

}  // namespace

std::shared_ptr<const Entourage::Relation> Entourage::build(Index n, std::vector<PointSet> rows) {
  auto rel = std::make_shared<Relation>();
  rows.resize(static_cast<std::size_t>(n));
  rel->cols.assign(static_cast<std::size_t>(n), {});
  for (Index x = 0; x < n; ++x) {
    auto& r = rows[static_cast<std::size_t>(x)];
    r = normalized(std::move(r));
    for (Index y : r) {
      if (y < 0 || y >= n) throw InputError("relation pair references unknown point " + std::to_string(y));
      rel->cols[static_cast<std::size_t>(y)].push_back(x);
    }
  }
  rel->rows = std::move(rows);
  return rel;
}

namespace {
bool within(double d, double r) { return std::isfinite(d) && d <= r; }
}  // namespace

Entourage Entourage::radius(const FiniteCoarseSpace& space, double r) {
  if (std::isnan(r) || r < 0.0) throw InputError("entourage radius must be nonnegative");
  return Entourage(space, r);
}

Entourage Entourage::diagonal(const FiniteCoarseSpace& space) {
  std::vector<PointSet> rows(static_cast<std::size_t>(space.size()));
  for (Index x = 0; x < space.size(); ++x) rows[static_cast<std::size_t>(x)] = {x};
  return from_rows(space, std::move(rows));
}

Entourage Entourage::finite_distance(const FiniteCoarseSpace& space) { return radius(space, kInfinity); }

Entourage Entourage::from_rows(const FiniteCoarseSpace& space, std::vector<PointSet> rows) {
  if (static_cast<Index>(rows.size()) > space.size()) throw InputError("relation has more rows than points");
  return Entourage(space, build(space.size(), std::move(rows)));
}

Entourage Entourage::from_pairs(const FiniteCoarseSpace& space, const std::vector<Pair>& pairs, bool symmetrize) {
  std::vector<PointSet> rows(static_cast<std::size_t>(space.size()));
  for (auto [x, y] : pairs) {
    space.check_index(x);
    space.check_index(y);
    rows[static_cast<std::size_t>(x)].push_back(y);
    if (symmetrize) rows[static_cast<std::size_t>(y)].push_back(x);
  }
  return from_rows(space, std::move(rows));
}

Entourage Entourage::from_blocks(const FiniteCoarseSpace& space, const std::vector<PointSet>& blocks) {
  std::vector<PointSet> rows(static_cast<std::size_t>(space.size()));
  for (const auto& block : blocks)
    for (Index x : block) {
      space.check_index(x);
      auto& r = rows[static_cast<std::size_t>(x)];
      r.insert(r.end(), block.begin(), block.end());
    }
  return from_rows(space, std::move(rows));
}

bool Entourage::contains(Index x, Index y) const {
  if (kind_ == Kind::radius) return within(space_.distance(x, y), radius_);
  return coarse::contains(rel_->rows[static_cast<std::size_t>(x)], y);
}

PointSet Entourage::section(Index x) const {
  space_.check_index(x);
  if (kind_ == Kind::explicit_relation) return rel_->cols[static_cast<std::size_t>(x)];
  PointSet out;
  for (Index y = 0; y < space_.size(); ++y)
    if (within(space_.distance(y, x), radius_)) out.push_back(y);
  return out;
}

PointSet Entourage::row(Index x) const {
  space_.check_index(x);
  if (kind_ == Kind::explicit_relation) return rel_->rows[static_cast<std::size_t>(x)];
  return section(x);
}

PointSet Entourage::section(const PointSet& subset) const {
  std::vector<char> hit(static_cast<std::size_t>(size()), 0);
  for (Index x : subset)
    for (Index y : section(x)) hit[static_cast<std::size_t>(y)] = 1;
  PointSet out;
  for (Index y = 0; y < size(); ++y)
    if (hit[static_cast<std::size_t>(y)]) out.push_back(y);
  return out;
}

bool Entourage::is_symmetric() const {
  if (kind_ == Kind::radius) return true;
  return rel_->rows == rel_->cols;
}

bool Entourage::contains_diagonal() const {
  for (Index x = 0; x < size(); ++x)
    if (!contains(x, x)) return false;
  return true;
}

std::size_t Entourage::pair_count() const {
  std::size_t count = 0;
  for (Index x = 0; x < size(); ++x) count += row(x).size();
  return count;
}

std::vector<Entourage::Pair> Entourage::pairs() const {
  std::vector<Pair> out;
  for (Index x = 0; x < size(); ++x)
    for (Index y : row(x)) out.emplace_back(x, y);
  return out;
}

Entourage Entourage::materialized() const {
  if (kind_ == Kind::explicit_relation) return *this;
  std::vector<PointSet> rows(static_cast<std::size_t>(size()));
  for (Index x = 0; x < size(); ++x) rows[static_cast<std::size_t>(x)] = row(x);
  return Entourage(space_, build(size(), std::move(rows)));
}

Entourage Entourage::inverse() const {
  if (kind_ == Kind::radius) return materialized();
  auto rel = std::make_shared<Relation>();
  rel->rows = rel_->cols;
  rel->cols = rel_->rows;
  return Entourage(space_, std::move(rel));
}

std::string Entourage::descriptor() const {
  std::ostringstream out;
  if (kind_ == Kind::radius) {
    out << "radius:";
    if (std::isinf(radius_)) out << "inf"; else out << radius_;
  } else {
    out << "explicit:" << pair_count();
  }
  return out.str();
}

Entourage compose(const Entourage& e, const Entourage& f) {
  require_same_space(e, f);
  const Index n = e.size();
  std::vector<PointSet> frows(static_cast<std::size_t>(n));
  for (Index y = 0; y < n; ++y) frows[static_cast<std::size_t>(y)] = f.row(y);
  std::vector<PointSet> rows(static_cast<std::size_t>(n));
  std::vector<char> hit(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x) {
    std::fill(hit.begin(), hit.end(), 0);
    for (Index y : e.row(x))
      for (Index z : frows[static_cast<std::size_t>(y)]) hit[static_cast<std::size_t>(z)] = 1;
    auto& r = rows[static_cast<std::size_t>(x)];
    for (Index z = 0; z < n; ++z)
      if (hit[static_cast<std::size_t>(z)]) r.push_back(z);
  }
  return Entourage::from_rows(e.space(), std::move(rows));
}

Entourage power(const Entourage& e, int n) {
  if (n < 1) throw InputError("entourage power requires n >= 1 (use Entourage::diagonal for n = 0)");
  Entourage out = e.materialized();
  for (int k = 1; k < n; ++k) out = compose(out, e);
  return out;
}

Entourage unite(const Entourage& e, const Entourage& f) {
  require_same_space(e, f);
  std::vector<PointSet> rows(static_cast<std::size_t>(e.size()));
  for (Index x = 0; x < e.size(); ++x) rows[static_cast<std::size_t>(x)] = set_union(e.row(x), f.row(x));
  return Entourage::from_rows(e.space(), std::move(rows));
}

Entourage with_diagonal(const Entourage& e) { return unite(e, Entourage::diagonal(e.space())); }

bool is_subset(const Entourage& e, const Entourage& f) {
  require_same_space(e, f);
  for (Index x = 0; x < e.size(); ++x)
    for (Index y : e.row(x))
      if (!f.contains(x, y)) return false;
  return true;
}

std::vector<int> connected_components(const Entourage& e) {
  const Index n = e.size();
  std::vector<PointSet> adj(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x)
    for (Index y : e.row(x)) {
      adj[static_cast<std::size_t>(x)].push_back(y);
      adj[static_cast<std::size_t>(y)].push_back(x);
    }
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    std::queue<Index> queue;
    queue.push(s);
    label[static_cast<std::size_t>(s)] = next;
    while (!queue.empty()) {
      Index x = queue.front();
      queue.pop();
      for (Index y : adj[static_cast<std::size_t>(x)])
        if (label[static_cast<std::size_t>(y)] < 0) {
          label[static_cast<std::size_t>(y)] = next;
          queue.push(y);
        }
    }
    ++next;
  }
  return label;
}

int component_count(const std::vector<int>& labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::vector<PointSet> components_as_sets(const std::vector<int>& labels) {
  std::vector<PointSet> out(static_cast<std::size_t>(component_count(labels)));
  for (std::size_t x = 0; x < labels.size(); ++x)
    out[static_cast<std::size_t>(labels[x])].push_back(static_cast<Index>(x));
  return out;
}

bool is_bounded(const Entourage& e, const PointSet& subset) {
  for (Index x : subset)
    for (Index y : subset)
      if (!e.contains(x, y)) return false;
  return true;
}

}  // namespace coarse
