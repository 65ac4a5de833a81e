#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "linerecon/coordinate.hpp"

namespace linerecon {

/// Labelled set of pairwise-distinct exact integer positions on the line.
/// Immutable after construction; safe to share across concurrent trials.
class PointSet {
 public:
  /// Labels are assigned by input order. Throws DuplicateCoordinate.
  explicit PointSet(std::vector<Coordinate> coords);

  int size() const { return static_cast<int>(coords_.size()); }
  const Coordinate& coord(int label) const { return coords_.at(label); }
  const std::vector<Coordinate>& coords() const { return coords_; }

  bool contains_value(const Coordinate& value) const;
  /// Label holding `value`, or -1.
  int label_of(const Coordinate& value) const;

  bool operator==(const PointSet& other) const {
    return coords_ == other.coords_;
  }

 private:
  std::vector<Coordinate> coords_;
  std::vector<std::pair<Coordinate, int>> sorted_;  // value -> label index
};

PointSet make_point_set(std::vector<Coordinate> values);
PointSet make_point_set(const std::vector<long long>& values);

/// n distinct integers uniform in [0, n^5]; deterministic per seed.
/// Such sets have o(n) secure pairs in expectation, the regime the
/// hitting-time experiments need.
PointSet gen_generic(int n, std::uint64_t seed);

/// Coordinates 1..n. Has 2*floor((n-1)^2/4) secure pairs.
PointSet gen_progression(int n);

/// k cliques of k consecutive integers joined by matchings of length k^i.
/// Point (i, s), 1 <= i <= ell, 1 <= s <= k, has label (i-1)*k + (s-1) and
/// coordinate k^(i-1) + ... + k + s. Returns the point set together with
/// the within-clique pairs and the matching pairs.
std::pair<PointSet, std::vector<std::pair<int, int>>> gen_product_construction(
    int k, int ell);

inline Coordinate reflection(const Coordinate& u, const Coordinate& v) {
  return 2 * v - u;
}

/// True iff the reflection of u over v lands on a point of V.
/// Throws SamePoint when u == v.
bool is_secure(int u, int v, const PointSet& V);

/// Number of ordered secure pairs; at most n^2/2 for every set.
long long count_secure_pairs(const PointSet& V);

}  // namespace linerecon
