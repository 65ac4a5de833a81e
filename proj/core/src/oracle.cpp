#include "linerecon/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "linerecon/errors.hpp"

namespace linerecon {

namespace {

std::vector<std::vector<int>> components_of(const DistanceGraph& G) {
  const int n = G.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comps[id].push_back(v);
      for (const auto& [w, eidx] : G.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }
  return comps;
}

std::vector<Coordinate> canonical_positions(std::vector<Coordinate> pos) {
  const auto [mn, mx] = std::minmax_element(pos.begin(), pos.end());
  const Coordinate lo = *mn;
  const Coordinate hi = *mx;
  std::vector<Coordinate> a(pos.size());
  std::vector<Coordinate> b(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    a[i] = pos[i] - lo;
    b[i] = hi - pos[i];
  }
  return std::min(a, b);
}

ComponentEmbeddings embed_component(const DistanceGraph& G,
                                    const std::vector<int>& members, int cap) {
  const int sz = static_cast<int>(members.size());
  if (sz > cap) {
    throw OracleCapExceeded("component of size " + std::to_string(sz) +
                            " exceeds oracle cap " + std::to_string(cap));
  }
  ComponentEmbeddings out;
  out.members = members;
  if (sz == 1) {
    out.classes.push_back(EmbeddingClass{members, {Coordinate(0)}});
    return out;
  }

  std::vector<int> local(G.size(), -1);
  for (int i = 0; i < sz; ++i) local[members[i]] = i;

  // BFS spanning tree rooted at the lowest label; neighbors ascending.
  std::vector<std::tuple<int, int, Coordinate>> tree;  // parent, child (local)
  std::vector<std::pair<std::pair<int, int>, Coordinate>> non_tree;
  {
    std::vector<char> seen(sz, 0);
    std::vector<int> bfs{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
      const int v = bfs[head];
      auto nbrs = G.neighbors(members[v]);
      std::sort(nbrs.begin(), nbrs.end());
      for (const auto& [w, eidx] : nbrs) {
        const int lw = local[w];
        if (!seen[lw]) {
          seen[lw] = 1;
          tree.emplace_back(v, lw, G.edge(eidx).distance);
          bfs.push_back(lw);
        } else if (members[lw] > members[v]) {
          // each non-tree edge once
          bool is_tree = false;
          for (const auto& [p, c, d] : tree) {
            if ((p == v && c == lw) || (p == lw && c == v)) {
              is_tree = true;
              break;
            }
          }
          if (!is_tree) {
            non_tree.push_back({{v, lw}, G.edge(eidx).distance});
          }
        }
      }
    }
  }

  std::set<std::vector<Coordinate>> seen_classes;
  std::vector<Coordinate> pos(sz);
  const int tree_edges = static_cast<int>(tree.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tree_edges);
       ++mask) {
    pos[0] = 0;
    for (int i = 0; i < tree_edges; ++i) {
      const auto& [p, c, d] = tree[i];
      pos[c] = (mask >> i) & 1 ? pos[p] + d : pos[p] - d;
    }
    bool ok = true;
    for (const auto& [pc, d] : non_tree) {
      if (abs_coord(pos[pc.first] - pos[pc.second]) != d) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<Coordinate> sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      continue;  // not injective
    }
    seen_classes.insert(canonical_positions(pos));
  }
  for (const auto& cls : seen_classes) {
    out.classes.push_back(EmbeddingClass{members, cls});
  }
  return out;
}

}  // namespace

std::vector<ComponentEmbeddings> enumerate_embeddings(const DistanceGraph& G,
                                                      int cap) {
  std::vector<ComponentEmbeddings> out;
  for (const auto& members : components_of(G)) {
    out.push_back(embed_component(G, members, cap));
  }
  return out;
}

namespace {

std::vector<std::pair<int, int>> deducible_in_component(
    const ComponentEmbeddings& comp) {
  const int sz = static_cast<int>(comp.members.size());
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < sz; ++i) {
    for (int j = i + 1; j < sz; ++j) {
      bool agree = true;
      if (!comp.classes.empty()) {
        const Coordinate first =
            abs_coord(comp.classes[0].positions[i] - comp.classes[0].positions[j]);
        for (std::size_t c = 1; c < comp.classes.size(); ++c) {
          if (abs_coord(comp.classes[c].positions[i] -
                        comp.classes[c].positions[j]) != first) {
            agree = false;
            break;
          }
        }
      }
      if (agree) out.emplace_back(comp.members[i], comp.members[j]);
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> deducible_pairs(const DistanceGraph& G,
                                                 int cap) {
  std::vector<std::pair<int, int>> out;
  for (const auto& comp : enumerate_embeddings(G, cap)) {
    auto d = deducible_in_component(comp);
    out.insert(out.end(), d.begin(), d.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_reconstructible_set(const std::vector<int>& U, const DistanceGraph& G,
                            int cap) {
  if (U.size() <= 1) return true;
  const auto comps = components_of(G);
  std::vector<int> comp_of(G.size());
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    for (int v : comps[c]) comp_of[v] = c;
  }
  const int c0 = comp_of[U[0]];
  for (int u : U) {
    if (comp_of[u] != c0) return false;
  }
  const auto comp = embed_component(G, comps[c0], cap);
  const auto ded = deducible_in_component(comp);
  std::set<std::pair<int, int>> dedset(ded.begin(), ded.end());
  for (std::size_t i = 0; i < U.size(); ++i) {
    for (std::size_t j = i + 1; j < U.size(); ++j) {
      const int a = std::min(U[i], U[j]);
      const int b = std::max(U[i], U[j]);
      if (a == b) throw ValidationError("duplicate label in U");
      if (!dedset.count({a, b})) return false;
    }
  }
  return true;
}

bool is_reconstructible_set_direct(const std::vector<int>& U,
                                   const DistanceGraph& G, int cap) {
  if (U.size() <= 1) return true;
  const auto comps = components_of(G);
  std::vector<int> comp_of(G.size());
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    for (int v : comps[c]) comp_of[v] = c;
  }
  const int c0 = comp_of[U[0]];
  for (int u : U) {
    if (comp_of[u] != c0) return false;
  }
  const auto comp = embed_component(G, comps[c0], cap);
  std::vector<int> sorted_u = U;
  std::sort(sorted_u.begin(), sorted_u.end());
  std::vector<int> idx;
  for (int u : sorted_u) {
    const auto it =
        std::lower_bound(comp.members.begin(), comp.members.end(), u);
    idx.push_back(static_cast<int>(it - comp.members.begin()));
  }
  std::vector<Coordinate> first;
  for (std::size_t c = 0; c < comp.classes.size(); ++c) {
    std::vector<Coordinate> restricted;
    restricted.reserve(idx.size());
    for (int i : idx) restricted.push_back(comp.classes[c].positions[i]);
    auto canon = canonical_positions(std::move(restricted));
    if (c == 0) {
      first = std::move(canon);
    } else if (canon != first) {
      return false;
    }
  }
  return true;
}

std::vector<int> largest_reconstructible_set(const DistanceGraph& G, int cap) {
  std::vector<int> best;
  for (const auto& comp : enumerate_embeddings(G, cap)) {
    const int sz = static_cast<int>(comp.members.size());
    if (sz > 62) throw OracleCapExceeded("component too large for clique scan");
    const auto ded = deducible_in_component(comp);
    std::vector<std::uint64_t> adj(sz, 0);
    std::vector<int> local(G.size(), -1);
    for (int i = 0; i < sz; ++i) local[comp.members[i]] = i;
    for (const auto& [a, b] : ded) {
      adj[local[a]] |= std::uint64_t{1} << local[b];
      adj[local[b]] |= std::uint64_t{1} << local[a];
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sz); ++mask) {
      const int size = __builtin_popcountll(mask);
      if (size < static_cast<int>(best.size())) continue;
      bool clique = true;
      for (std::uint64_t rest = mask; rest && clique;) {
        const int i = __builtin_ctzll(rest);
        rest &= rest - 1;
        if ((mask & ~(std::uint64_t{1} << i)) & ~adj[i]) clique = false;
      }
      if (!clique) continue;
      std::vector<int> cand;
      for (std::uint64_t rest = mask; rest;) {
        const int i = __builtin_ctzll(rest);
        rest &= rest - 1;
        cand.push_back(comp.members[i]);
      }
      if (cand.size() > best.size() ||
          (cand.size() == best.size() && cand < best)) {
        best = std::move(cand);
      }
    }
  }
  return best;
}

long long hitting_time_exact(const PointSet& V, const RevealSchedule& schedule,
                             int cap) {
  const int n = V.size();
  if (n != schedule.n) throw ValidationError("schedule/point-set size mismatch");
  if (n > cap) {
    throw OracleCapExceeded("hitting_time_exact needs n <= cap");
  }
  if (n == 1) return 0;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  // Union-find just for connectivity: the full set cannot be reconstructible
  // while the graph is disconnected.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = n;
  DistanceGraph G(n);
  long long t = 0;
  for (const auto& [u, v] : schedule.order) {
    ++t;
    G.add_edge(u, v, abs_coord(V.coord(u) - V.coord(v)), Provenance::kRevealed);
    const int ru = find(u);
    const int rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --comps;
    }
    if (comps > 1) continue;
    if (is_reconstructible_set(all, G, cap)) return t;
  }
  throw std::logic_error("complete graph must be reconstructible");
}

OracleResult oracle_result(const DistanceGraph& G, int cap) {
  OracleResult out;
  out.components = enumerate_embeddings(G, cap);
  for (const auto& comp : out.components) {
    auto d = deducible_in_component(comp);
    out.deducible.insert(out.deducible.end(), d.begin(), d.end());
  }
  std::sort(out.deducible.begin(), out.deducible.end());
  out.largest = largest_reconstructible_set(G, cap);
  return out;
}

}  // namespace linerecon
