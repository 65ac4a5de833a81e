#pragma once

#include <vector>

#include "linerecon/coordinate.hpp"
#include "linerecon/distance_graph.hpp"
#include "linerecon/point_set.hpp"

namespace linerecon {

inline constexpr int kDefaultOracleCap = 14;

/// One consistent injective embedding of a connected component, canonical:
/// translated so the minimum position is 0, oriented so the label-indexed
/// position tuple is lexicographically least.
struct EmbeddingClass {
  std::vector<int> members;           // ascending labels of the component
  std::vector<Coordinate> positions;  // aligned with members
  bool operator==(const EmbeddingClass& other) const = default;
};

struct ComponentEmbeddings {
  std::vector<int> members;
  std::vector<EmbeddingClass> classes;  // sorted by position tuple
};

/// Exhaustive per-component enumeration: root at 0, all sign choices along a
/// spanning tree, keep assignments that satisfy every non-tree edge and are
/// injective, canonicalize and deduplicate. Components larger than `cap`
/// throw OracleCapExceeded.
std::vector<ComponentEmbeddings> enumerate_embeddings(
    const DistanceGraph& G, int cap = kDefaultOracleCap);

/// Pairs within one component whose distance is identical across all of the
/// component's embedding classes. Cross-component pairs are never deducible
/// (a free translation separates the components).
std::vector<std::pair<int, int>> deducible_pairs(const DistanceGraph& G,
                                                 int cap = kDefaultOracleCap);

/// Every pair inside U deducible. Sets of size <= 1 are trivially
/// reconstructible.
bool is_reconstructible_set(const std::vector<int>& U, const DistanceGraph& G,
                            int cap = kDefaultOracleCap);

/// Reference definition used to validate is_reconstructible_set: all classes
/// of U's component agree on U after restriction and canonicalization.
bool is_reconstructible_set_direct(const std::vector<int>& U,
                                   const DistanceGraph& G,
                                   int cap = kDefaultOracleCap);

/// Maximum clique of the deducible-pair graph, exact; ties resolved to the
/// lexicographically least member set.
std::vector<int> largest_reconstructible_set(const DistanceGraph& G,
                                             int cap = kDefaultOracleCap);

/// First index t such that the first t revealed distances make the whole of
/// V reconstructible.
long long hitting_time_exact(const PointSet& V, const RevealSchedule& schedule,
                             int cap = kDefaultOracleCap);

struct OracleResult {
  std::vector<ComponentEmbeddings> components;
  std::vector<std::pair<int, int>> deducible;
  std::vector<int> largest;
};

OracleResult oracle_result(const DistanceGraph& G, int cap = kDefaultOracleCap);

}  // namespace linerecon
