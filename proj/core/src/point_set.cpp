#include "linerecon/point_set.hpp"

#include <algorithm>
#include <set>

#include "linerecon/errors.hpp"
#include "linerecon/rng.hpp"

namespace linerecon {

PointSet::PointSet(std::vector<Coordinate> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ValidationError("PointSet requires n >= 1");
  sorted_.reserve(coords_.size());
  for (int i = 0; i < static_cast<int>(coords_.size()); ++i) {
    sorted_.emplace_back(coords_[i], i);
  }
  std::sort(sorted_.begin(), sorted_.end());
  for (std::size_t i = 1; i < sorted_.size(); ++i) {
    if (sorted_[i].first == sorted_[i - 1].first) {
      throw DuplicateCoordinate("duplicate coordinate " +
                                coord_str(sorted_[i].first));
    }
  }
}

bool PointSet::contains_value(const Coordinate& value) const {
  return label_of(value) >= 0;
}

int PointSet::label_of(const Coordinate& value) const {
  auto it = std::lower_bound(
      sorted_.begin(), sorted_.end(), value,
      [](const std::pair<Coordinate, int>& a, const Coordinate& b) {
        return a.first < b;
      });
  if (it != sorted_.end() && it->first == value) return it->second;
  return -1;
}

PointSet make_point_set(std::vector<Coordinate> values) {
  return PointSet(std::move(values));
}

PointSet make_point_set(const std::vector<long long>& values) {
  std::vector<Coordinate> coords;
  coords.reserve(values.size());
  for (long long v : values) coords.emplace_back(v);
  return PointSet(std::move(coords));
}

PointSet gen_generic(int n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("gen_generic requires n >= 1");
  SplitMix64 rng = derive_stream(seed, "gen_generic");
  Coordinate bound = 1;
  for (int i = 0; i < 5; ++i) bound *= n;
  std::set<Coordinate> seen;
  std::vector<Coordinate> coords;
  coords.reserve(n);
  while (static_cast<int>(coords.size()) < n) {
    Coordinate c = rng.below_inclusive(bound);
    if (seen.insert(c).second) coords.push_back(std::move(c));
  }
  return PointSet(std::move(coords));
}

PointSet gen_progression(int n) {
  if (n < 1) throw ValidationError("gen_progression requires n >= 1");
  std::vector<Coordinate> coords;
  coords.reserve(n);
  for (int i = 1; i <= n; ++i) coords.emplace_back(i);
  return PointSet(std::move(coords));
}

std::pair<PointSet, std::vector<std::pair<int, int>>> gen_product_construction(
    int k, int ell) {
  if (k < 1 || ell < 1) {
    throw ValidationError("gen_product_construction requires k >= 1, l >= 1");
  }
  const auto label = [k](int i, int s) { return (i - 1) * k + (s - 1); };
  std::vector<Coordinate> coords(static_cast<std::size_t>(k) * ell);
  Coordinate base = 0;  // k^(i-1) + ... + k for the current clique
  Coordinate power = 1;
  for (int i = 1; i <= ell; ++i) {
    for (int s = 1; s <= k; ++s) coords[label(i, s)] = base + s;
    power *= k;
    base += power;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= ell; ++i) {
    for (int s = 1; s <= k; ++s) {
      for (int t = s + 1; t <= k; ++t) pairs.emplace_back(label(i, s), label(i, t));
    }
  }
  for (int i = 1; i < ell; ++i) {
    for (int s = 1; s <= k; ++s) pairs.emplace_back(label(i, s), label(i + 1, s));
  }
  return {PointSet(std::move(coords)), std::move(pairs)};
}

bool is_secure(int u, int v, const PointSet& V) {
  if (u == v) throw SamePoint("is_secure requires u != v");
  return V.contains_value(reflection(V.coord(u), V.coord(v)));
}

long long count_secure_pairs(const PointSet& V) {
  const int n = V.size();
  long long count = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (is_secure(u, v, V)) ++count;
    }
  }
  return count;
}

}  // namespace linerecon
