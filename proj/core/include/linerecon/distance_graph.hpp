#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linerecon/coordinate.hpp"
#include "linerecon/point_set.hpp"

namespace linerecon {

enum class Provenance : std::uint8_t { kRevealed, kDeduced };

struct Edge {
  int u;  // u < v
  int v;
  Coordinate distance;
  Provenance provenance;
};

/// The observer's knowledge: a simple graph of revealed (and later deduced)
/// pairwise distances. Edge insertion order is preserved; it is part of the
/// deterministic contract of cluster growth downstream.
class DistanceGraph {
 public:
  explicit DistanceGraph(int n);

  int size() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int idx) const { return edges_[idx]; }

  /// Index of the edge joining u,v or -1.
  int find_edge(int u, int v) const;
  bool has_edge(int u, int v) const { return find_edge(u, v) >= 0; }
  const Coordinate& distance(int u, int v) const;

  /// (neighbor, edge index) pairs in insertion order.
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adjacency_[v];
  }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  /// Adds an edge. Re-adding a pair with an equal distance is a no-op;
  /// a different distance throws InconsistentDeduction. Zero distances and
  /// loops are rejected.
  void add_edge(int u, int v, Coordinate distance,
                Provenance provenance = Provenance::kRevealed);

  int deduced_count() const { return deduced_count_; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  std::unordered_map<std::uint64_t, int> index_;
  int deduced_count_ = 0;
};

/// Graph with distance |coord(u) - coord(v)| for each requested pair.
DistanceGraph observe_distances(const PointSet& V,
                                const std::vector<std::pair<int, int>>& pairs);

/// Each pair kept independently with probability p; deterministic per seed.
std::vector<std::pair<int, int>> sample_gnp(int n, double p, std::uint64_t seed);

/// A uniformly random permutation of all C(n,2) pairs.
struct RevealSchedule {
  int n = 0;
  std::vector<std::pair<int, int>> order;
};

RevealSchedule random_schedule(int n, std::uint64_t seed);

struct DegreeSummary {
  int min_degree = 0;
  std::vector<int> degree_one;
  std::vector<int> isolated;
};

DegreeSummary degree_summary(const DistanceGraph& G);

/// Degree-one labels whose unique neighbour does not form a secure pair.
/// Each is a deterministic witness that the whole of V cannot be
/// reconstructed (n >= 3).
std::vector<int> undecidable_points(const DistanceGraph& G, const PointSet& V);

/// Ordered pairs (u, v) where uv is u's only edge, the mirror point
/// w = 2v - u exists in V, and w itself has degree one.
std::vector<std::pair<int, int>> uncertain_pairs(const DistanceGraph& G,
                                                 const PointSet& V);

/// No isolated point and no undecidable point.
bool structural_condition(const DistanceGraph& G, const PointSet& V);

/// Simple cycle in canonical form: the lexicographically least vertex
/// sequence over all rotations of both orientations.
struct Cycle {
  std::vector<int> vertices;

  static Cycle canonical(std::vector<int> vertices);
  int length() const { return static_cast<int>(vertices.size()); }
  bool operator==(const Cycle& other) const = default;
};

inline constexpr std::uint64_t kDefaultWalkBudget = 100'000'000ULL;

/// All simple cycles of length <= max_len, each once, canonical. DFS work is
/// bounded by walk_budget extension steps; beyond it WalkBudgetExceeded is
/// thrown.
std::vector<Cycle> enumerate_short_cycles(
    const DistanceGraph& G, int max_len,
    std::uint64_t walk_budget = kDefaultWalkBudget);

/// Cycles of length <= max_len through the edge uv (which must exist).
/// Exactly the cycles enumerate_short_cycles would report that contain uv.
std::vector<Cycle> cycles_through_edge(
    const DistanceGraph& G, int u, int v, int max_len,
    std::uint64_t walk_budget = kDefaultWalkBudget);

/// Default cycle-length cap 0.9 ln n (natural log), at least 3.
int default_cycle_cap(int n);

}  // namespace linerecon
