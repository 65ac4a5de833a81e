#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "linerecon/coordinate.hpp"
#include "linerecon/distance_graph.hpp"

namespace linerecon {

/// All sign vectors (e_1..e_{k-1}) in {-1,+1}^{k-1} with sum e_i*d_i equal
/// to the closing distance. Exhaustive below 2^20, meet-in-the-middle above.
/// Vectors come back ordered by their +1-bitmask value.
std::vector<std::vector<std::int8_t>> cycle_sign_solutions(
    const std::vector<Coordinate>& consecutive, const Coordinate& closing);

/// A short cycle whose consecutive distances admit exactly one sign vector,
/// so the cycle embeds uniquely up to isometry.
struct CycleCertificate {
  Cycle cycle;
  std::vector<Coordinate> distances;  // d_1..d_k, d_k the closing distance
  std::vector<std::int8_t> signs;     // e_1..e_{k-1}
};

/// Certificate iff the sign vector is unique.
std::optional<CycleCertificate> certify_cycle(const Cycle& c,
                                              const DistanceGraph& G);

using DeducedDistance = std::pair<std::pair<int, int>, Coordinate>;

/// Distances of all non-adjacent pairs of a certified cycle:
/// |sum of e_l*d_l over the arc between them|.
std::vector<DeducedDistance> deduce_cycle_distances(
    const CycleCertificate& cert);

/// Union graph; deduced edges flagged; a conflicting duplicate throws
/// InconsistentDeduction. Zero distances (impossible on faithful data) are
/// dropped.
DistanceGraph augment(DistanceGraph G,
                      const std::vector<DeducedDistance>& deduced);

/// A set of labels whose mutual distances are all determined, with positions
/// relative to the lowest member at 0, orientation making the second-lowest
/// member positive.
struct Cluster {
  std::vector<int> members;           // ascending
  std::vector<Coordinate> positions;  // aligned with members

  int size() const { return static_cast<int>(members.size()); }
  bool operator==(const Cluster& other) const = default;
};

/// Deterministic fixed point of the growth rules over revealed and deduced
/// edges: single edges seed two-point clusters, a vertex with two edges into
/// one cluster is absorbed at the unique consistent position, a pendant
/// vertex whose mirror slot is occupied is absorbed at the free slot, and
/// two clusters joined by enough edges to pin their relative placement are
/// merged. Inconsistent constraints leave vertices out rather than failing,
/// so adversarial distances are tolerated.
///
/// Processing order: revealed edges in graph insertion order, then deduced
/// edges sorted by pair. The order only affects how leftover degree-one
/// fringes pair up; it is fixed so that replaying a reveal sequence and
/// recomputing from scratch agree.
std::vector<Cluster> grow_clusters(const DistanceGraph& G);

struct EngineParams {
  int cycle_cap = 0;               // 0 = 0.9 ln n, minimum 3
  long long seed_edge_budget = -1; // -1 = 42n
  std::uint64_t walk_budget = kDefaultWalkBudget;

  int resolve_cycle_cap(int n) const {
    return cycle_cap > 0 ? cycle_cap : default_cycle_cap(n);
  }
  long long resolve_edge_budget(int n) const {
    return seed_edge_budget >= 0 ? seed_edge_budget : 42LL * n;
  }
};

struct ReconReport {
  std::vector<Cluster> clusters;  // size >= 2, sorted by lowest member
  int largest = 1;
  bool full = false;
  long long deduced_edges = 0;
};

/// Batch pipeline: enumerate short cycles, certify, deduce, augment, grow.
ReconReport reconstruct(const DistanceGraph& G, const EngineParams& params = {});

/// Online engine of the one-by-one reveal process. Edges accumulate until
/// the seed budget, the full pipeline runs once at the budget, and every
/// later reveal certifies the cycles it closes and refreshes the cluster
/// fixed point. After the budget the certified clusters always equal those
/// of `reconstruct` on the revealed graph with the same parameters.
class EngineState {
 public:
  EngineState(int n, EngineParams params = {});

  int size() const { return n_; }
  const EngineParams& params() const { return params_; }
  const DistanceGraph& revealed() const { return revealed_; }
  long long reveal_count() const { return reveal_count_; }
  long long deduced_count() const {
    return static_cast<long long>(deduced_.size());
  }

  void reveal(int u, int v, Coordinate distance);

  const std::vector<Cluster>& certified_clusters();
  bool certified_full();
  ReconReport report();

 private:
  void run_full_pipeline();
  void record_deductions(const std::vector<Cycle>& cycles);
  void refresh_clusters();

  int n_;
  EngineParams params_;
  DistanceGraph revealed_;
  std::map<std::pair<int, int>, Coordinate> deduced_;
  long long reveal_count_ = 0;
  std::vector<Cluster> clusters_;
  bool clusters_stale_ = true;
};

/// Spec-level wrapper: reveal one distance into the state.
inline void online_update(EngineState& state, std::pair<int, int> pair,
                          Coordinate distance) {
  state.reveal(pair.first, pair.second, std::move(distance));
}

inline bool certified_full(EngineState& state) {
  return state.certified_full();
}

}  // namespace linerecon
