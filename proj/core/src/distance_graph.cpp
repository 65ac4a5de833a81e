#include "linerecon/distance_graph.hpp"

#include <algorithm>
#include <cmath>

#include "linerecon/errors.hpp"
#include "linerecon/rng.hpp"

namespace linerecon {

namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

}  // namespace

DistanceGraph::DistanceGraph(int n) : n_(n), adjacency_(n) {
  if (n < 1) throw ValidationError("DistanceGraph requires n >= 1");
}

int DistanceGraph::find_edge(int u, int v) const {
  auto it = index_.find(pair_key(u, v));
  return it == index_.end() ? -1 : it->second;
}

const Coordinate& DistanceGraph::distance(int u, int v) const {
  const int idx = find_edge(u, v);
  if (idx < 0) throw ValidationError("no such edge");
  return edges_[idx].distance;
}

void DistanceGraph::add_edge(int u, int v, Coordinate distance,
                             Provenance provenance) {
  if (u == v) throw ValidationError("loop edge rejected");
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw ValidationError("edge label out of range");
  }
  if (distance <= 0) throw ValidationError("edge distance must be positive");
  if (u > v) std::swap(u, v);
  const int existing = find_edge(u, v);
  if (existing >= 0) {
    if (edges_[existing].distance != distance) {
      throw InconsistentDeduction(
          "pair (" + std::to_string(u) + "," + std::to_string(v) +
          ") already has distance " + coord_str(edges_[existing].distance) +
          ", refusing " + coord_str(distance));
    }
    return;
  }
  const int idx = edge_count();
  edges_.push_back(Edge{u, v, std::move(distance), provenance});
  adjacency_[u].emplace_back(v, idx);
  adjacency_[v].emplace_back(u, idx);
  index_.emplace(pair_key(u, v), idx);
  if (provenance == Provenance::kDeduced) ++deduced_count_;
}

DistanceGraph observe_distances(const PointSet& V,
                                const std::vector<std::pair<int, int>>& pairs) {
  DistanceGraph G(V.size());
  for (const auto& [u, v] : pairs) {
    G.add_edge(u, v, abs_coord(V.coord(u) - V.coord(v)), Provenance::kRevealed);
  }
  return G;
}

std::vector<std::pair<int, int>> sample_gnp(int n, double p,
                                            std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ValidationError("p must lie in [0, 1]");
  if (p == 0.0) return {};
  auto pairs = all_pairs(n);
  if (p == 1.0) return pairs;
  SplitMix64 rng = derive_stream(seed, "gnp");
  std::vector<std::pair<int, int>> kept;
  for (const auto& pr : pairs) {
    if (rng.bernoulli(p)) kept.push_back(pr);
  }
  return kept;
}

RevealSchedule random_schedule(int n, std::uint64_t seed) {
  if (n < 2) throw ValidationError("random_schedule requires n >= 2");
  RevealSchedule s;
  s.n = n;
  s.order = all_pairs(n);
  SplitMix64 rng = derive_stream(seed, "schedule");
  for (std::size_t i = s.order.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(s.order[i - 1], s.order[j]);
  }
  return s;
}

DegreeSummary degree_summary(const DistanceGraph& G) {
  DegreeSummary out;
  out.min_degree = G.size() > 0 ? G.degree(0) : 0;
  for (int v = 0; v < G.size(); ++v) {
    const int d = G.degree(v);
    out.min_degree = std::min(out.min_degree, d);
    if (d == 1) out.degree_one.push_back(v);
    if (d == 0) out.isolated.push_back(v);
  }
  return out;
}

std::vector<int> undecidable_points(const DistanceGraph& G, const PointSet& V) {
  if (G.size() != V.size()) throw ValidationError("graph/point-set size mismatch");
  std::vector<int> out;
  for (int u = 0; u < G.size(); ++u) {
    if (G.degree(u) != 1) continue;
    const int v = G.neighbors(u).front().first;
    if (!is_secure(u, v, V)) out.push_back(u);
  }
  return out;
}

std::vector<std::pair<int, int>> uncertain_pairs(const DistanceGraph& G,
                                                 const PointSet& V) {
  if (G.size() != V.size()) throw ValidationError("graph/point-set size mismatch");
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < G.size(); ++u) {
    if (G.degree(u) != 1) continue;
    const int v = G.neighbors(u).front().first;
    const int w = V.label_of(reflection(V.coord(u), V.coord(v)));
    if (w >= 0 && G.degree(w) == 1) out.emplace_back(u, v);
  }
  return out;
}

bool structural_condition(const DistanceGraph& G, const PointSet& V) {
  for (int v = 0; v < G.size(); ++v) {
    if (G.degree(v) == 0) return false;
  }
  return undecidable_points(G, V).empty();
}

Cycle Cycle::canonical(std::vector<int> vertices) {
  const int k = static_cast<int>(vertices.size());
  if (k < 3) throw ValidationError("cycle needs at least 3 vertices");
  // Rotate the minimum label to the front, then pick the direction whose
  // second element is smaller.
  const auto min_it = std::min_element(vertices.begin(), vertices.end());
  std::rotate(vertices.begin(), min_it, vertices.end());
  if (vertices[1] > vertices[k - 1]) {
    std::reverse(vertices.begin() + 1, vertices.end());
  }
  return Cycle{std::move(vertices)};
}

int default_cycle_cap(int n) {
  const int cap = static_cast<int>(std::floor(0.9 * std::log(std::max(1, n))));
  return std::max(3, cap);
}

namespace {

struct CycleDfs {
  const DistanceGraph& G;
  int max_len;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  std::vector<int> path;
  std::vector<char> on_path;
  std::vector<Cycle>& out;

  CycleDfs(const DistanceGraph& g, int L, std::uint64_t b,
           std::vector<Cycle>& o)
      : G(g), max_len(L), budget(b), on_path(g.size(), 0), out(o) {}

  void step() {
    if (++steps > budget) {
      throw WalkBudgetExceeded("cycle enumeration exceeded " +
                               std::to_string(budget) + " walk steps");
    }
  }

  // Paths from the root using only larger labels; a closing edge back to the
  // root yields each cycle exactly once with the root minimal. Emitting only
  // when path[1] < path.back() fixes the orientation, so the emitted
  // sequence is already canonical.
  void run_root(int root) {
    path.assign(1, root);
    on_path[root] = 1;
    extend(root);
    on_path[root] = 0;
  }

  void extend(int v) {
    const int root = path.front();
    for (const auto& [w, eidx] : G.neighbors(v)) {
      step();
      if (w == root) {
        if (path.size() >= 3 && path[1] < path.back()) {
          out.push_back(Cycle{path});
        }
        continue;
      }
      if (w < root || on_path[w]) continue;
      if (static_cast<int>(path.size()) >= max_len) continue;
      path.push_back(w);
      on_path[w] = 1;
      extend(w);
      on_path[w] = 0;
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<Cycle> enumerate_short_cycles(const DistanceGraph& G, int max_len,
                                          std::uint64_t walk_budget) {
  if (max_len < 3) throw ValidationError("cycle length cap must be >= 3");
  std::vector<Cycle> out;
  CycleDfs dfs(G, max_len, walk_budget, out);
  for (int root = 0; root < G.size(); ++root) dfs.run_root(root);
  return out;
}

namespace {

struct EdgeCycleDfs {
  const DistanceGraph& G;
  int target;
  int banned_edge;
  int max_path_edges;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  std::vector<int> path;
  std::vector<char> on_path;
  std::vector<Cycle>& out;

  EdgeCycleDfs(const DistanceGraph& g, int tgt, int banned, int max_edges,
               std::uint64_t b, std::vector<Cycle>& o)
      : G(g),
        target(tgt),
        banned_edge(banned),
        max_path_edges(max_edges),
        on_path(g.size(), 0),
        out(o) {
    budget = b;
  }

  void extend(int v) {
    const int used_edges = static_cast<int>(path.size()) - 1;
    for (const auto& [w, eidx] : G.neighbors(v)) {
      if (++steps > budget) {
        throw WalkBudgetExceeded("cycle detection exceeded " +
                                 std::to_string(budget) + " walk steps");
      }
      if (eidx == banned_edge) continue;
      if (w == target) {
        if (path.size() >= 2) {
          std::vector<int> cyc = path;
          cyc.push_back(target);
          out.push_back(Cycle::canonical(std::move(cyc)));
        }
        continue;
      }
      if (on_path[w]) continue;
      if (used_edges + 1 >= max_path_edges) continue;
      path.push_back(w);
      on_path[w] = 1;
      extend(w);
      on_path[w] = 0;
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<Cycle> cycles_through_edge(const DistanceGraph& G, int u, int v,
                                       int max_len,
                                       std::uint64_t walk_budget) {
  if (max_len < 3) throw ValidationError("cycle length cap must be >= 3");
  const int eidx = G.find_edge(u, v);
  if (eidx < 0) throw ValidationError("cycles_through_edge: edge not present");
  std::vector<Cycle> out;
  // Paths u -> v of at most max_len - 1 edges avoiding uv itself.
  EdgeCycleDfs dfs(G, v, eidx, max_len - 1, walk_budget, out);
  dfs.path.assign(1, u);
  dfs.on_path[u] = 1;
  dfs.extend(u);
  return out;
}

}  // namespace linerecon
