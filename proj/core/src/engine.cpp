#include "linerecon/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "linerecon/errors.hpp"

namespace linerecon {

namespace {

std::vector<std::int8_t> mask_to_signs(std::uint64_t mask, int len) {
  std::vector<std::int8_t> signs(len);
  for (int i = 0; i < len; ++i) {
    signs[i] = (mask >> i) & 1 ? std::int8_t{1} : std::int8_t{-1};
  }
  return signs;
}

std::vector<std::pair<Coordinate, std::uint64_t>> partial_sums(
    const std::vector<Coordinate>& d, int from, int to) {
  const int len = to - from;
  std::vector<std::pair<Coordinate, std::uint64_t>> sums;
  sums.reserve(std::size_t{1} << len);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
    Coordinate s = 0;
    for (int i = 0; i < len; ++i) {
      if ((mask >> i) & 1) {
        s += d[from + i];
      } else {
        s -= d[from + i];
      }
    }
    sums.emplace_back(std::move(s), mask);
  }
  return sums;
}

}  // namespace

std::vector<std::vector<std::int8_t>> cycle_sign_solutions(
    const std::vector<Coordinate>& consecutive, const Coordinate& closing) {
  const int len = static_cast<int>(consecutive.size());
  if (len < 2) throw ValidationError("cycle_sign_solutions requires k >= 3");
  for (const Coordinate& d : consecutive) {
    if (d <= 0) throw ValidationError("cycle distances must be positive");
  }
  if (closing <= 0) throw ValidationError("cycle distances must be positive");

  std::vector<std::vector<std::int8_t>> out;
  if (len <= 20) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      Coordinate s = 0;
      for (int i = 0; i < len; ++i) {
        if ((mask >> i) & 1) {
          s += consecutive[i];
        } else {
          s -= consecutive[i];
        }
      }
      if (s == closing) out.push_back(mask_to_signs(mask, len));
    }
    return out;
  }

  // Meet in the middle; recombine and order by full mask to match the
  // exhaustive enumeration.
  const int half = len / 2;
  auto left = partial_sums(consecutive, 0, half);
  auto right = partial_sums(consecutive, half, len);
  std::sort(right.begin(), right.end());
  std::vector<std::uint64_t> masks;
  for (const auto& [ls, lm] : left) {
    const Coordinate need = closing - ls;
    auto lo = std::lower_bound(
        right.begin(), right.end(), need,
        [](const auto& a, const Coordinate& b) { return a.first < b; });
    for (auto it = lo; it != right.end() && it->first == need; ++it) {
      masks.push_back(lm | (it->second << half));
    }
  }
  std::sort(masks.begin(), masks.end());
  out.reserve(masks.size());
  for (std::uint64_t m : masks) out.push_back(mask_to_signs(m, len));
  return out;
}

std::optional<CycleCertificate> certify_cycle(const Cycle& c,
                                              const DistanceGraph& G) {
  const int k = c.length();
  if (k < 3) throw ValidationError("cycle too short");
  std::vector<Coordinate> distances;
  distances.reserve(k);
  for (int i = 0; i + 1 < k; ++i) {
    const int idx = G.find_edge(c.vertices[i], c.vertices[i + 1]);
    if (idx < 0) throw ValidationError("certify_cycle: not a cycle of G");
    distances.push_back(G.edge(idx).distance);
  }
  const int closing = G.find_edge(c.vertices[k - 1], c.vertices[0]);
  if (closing < 0) throw ValidationError("certify_cycle: not a cycle of G");
  distances.push_back(G.edge(closing).distance);

  std::vector<Coordinate> consecutive(distances.begin(), distances.end() - 1);
  auto solutions = cycle_sign_solutions(consecutive, distances.back());
  if (solutions.size() != 1) return std::nullopt;
  return CycleCertificate{c, std::move(distances), std::move(solutions[0])};
}

std::vector<DeducedDistance> deduce_cycle_distances(
    const CycleCertificate& cert) {
  const int k = cert.cycle.length();
  std::vector<Coordinate> pos(k);
  pos[0] = 0;
  for (int i = 1; i < k; ++i) {
    pos[i] = cert.signs[i - 1] > 0 ? pos[i - 1] + cert.distances[i - 1]
                                   : pos[i - 1] - cert.distances[i - 1];
  }
  std::vector<DeducedDistance> out;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;  // the closing edge is adjacent
      out.push_back({{cert.cycle.vertices[i], cert.cycle.vertices[j]},
                     abs_coord(pos[j] - pos[i])});
    }
  }
  return out;
}

DistanceGraph augment(DistanceGraph G,
                      const std::vector<DeducedDistance>& deduced) {
  for (const auto& [pr, dist] : deduced) {
    if (dist <= 0) continue;  // impossible on faithfully observed data
    G.add_edge(pr.first, pr.second, dist, Provenance::kDeduced);
  }
  return G;
}

namespace {

// y -> sign*y + offset with sign in {-1, +1}.
struct AffineMap {
  int sign = 1;
  Coordinate offset = 0;

  Coordinate apply(const Coordinate& y) const {
    return sign > 0 ? y + offset : offset - y;
  }
  AffineMap inverse() const {
    return {sign, sign > 0 ? Coordinate(-offset) : offset};
  }
  bool operator==(const AffineMap& other) const = default;
};

// Union-find over points carrying exact relative positions. Every node sits
// at 0 in its own original frame; the stored transform maps that frame into
// the parent's original frame, so the root-frame position of a point is the
// offset of its composed transform.
class PositionDsu {
 public:
  explicit PositionDsu(int n) : parent_(n), sign_(n, 1), offset_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    if (parent_[x] == x) return x;
    const int root = find(parent_[x]);
    const int ps = sign_[parent_[x]];
    const Coordinate& po = offset_[parent_[x]];
    sign_[x] *= ps;
    offset_[x] = (ps > 0 ? offset_[x] : Coordinate(-offset_[x])) + po;
    parent_[x] = root;
    return root;
  }

  Coordinate position(int x) {
    find(x);
    return offset_[x];
  }

  void attach(int child_root, int new_root, const AffineMap& f) {
    parent_[child_root] = new_root;
    sign_[child_root] = f.sign;
    offset_[child_root] = f.offset;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> sign_;
  std::vector<Coordinate> offset_;
};

class ClusterGrower {
 public:
  explicit ClusterGrower(const DistanceGraph& G)
      : G_(G),
        n_(G.size()),
        dsu_(n_),
        members_(n_),
        min_label_(n_),
        occupancy_(n_),
        wishes_(n_),
        incident_(n_) {
    for (int v = 0; v < n_; ++v) {
      members_[v] = {v};
      min_label_[v] = v;
      occupancy_[v][0] = v;
    }
    // Revealed edges in insertion order, then deduced edges by pair. The
    // fixed seeding order keeps replayed and recomputed runs identical.
    std::vector<int> order;
    std::vector<int> deduced;
    for (int i = 0; i < G.edge_count(); ++i) {
      (G.edge(i).provenance == Provenance::kRevealed ? order : deduced)
          .push_back(i);
    }
    std::sort(deduced.begin(), deduced.end(), [&](int a, int b) {
      const Edge& ea = G.edge(a);
      const Edge& eb = G.edge(b);
      return std::pair(ea.u, ea.v) < std::pair(eb.u, eb.v);
    });
    order.insert(order.end(), deduced.begin(), deduced.end());
    for (int idx : order) {
      const Edge& e = G.edge(idx);
      incident_[e.u].push_back(idx);
      incident_[e.v].push_back(idx);
      queue_.emplace_back(e.u, e.v);
    }
  }

  std::vector<Cluster> run() {
    while (!queue_.empty()) {
      const auto [a, b] = queue_.front();
      queue_.pop_front();
      process_pair(a, b);
    }
    return extract();
  }

 private:
  void process_pair(int a, int b) {
    const int ra = dsu_.find(a);
    const int rb = dsu_.find(b);
    if (ra == rb) return;
    // Collect the live edges between the two sets by scanning the side with
    // the shorter incident list, purging entries that went internal.
    const int scan = incident_[ra].size() <= incident_[rb].size() ? ra : rb;
    std::vector<int> cross;
    auto& list = incident_[scan];
    for (std::size_t i = 0; i < list.size();) {
      const Edge& e = G_.edge(list[i]);
      const int ru = dsu_.find(e.u);
      const int rv = dsu_.find(e.v);
      if (ru == rv) {
        list[i] = list.back();
        list.pop_back();
        continue;
      }
      if ((ru == ra && rv == rb) || (ru == rb && rv == ra)) {
        cross.push_back(list[i]);
      }
      ++i;
    }
    if (cross.empty()) return;
    const auto f = resolve(ra, rb, cross);
    if (f) merge(ra, rb, *f);
  }

  // Transform rb-frame -> ra-frame when the constraints pin it uniquely.
  std::optional<AffineMap> resolve(int ra, int rb,
                                   const std::vector<int>& cross) {
    const std::size_t sa = members_[ra].size();
    const std::size_t sb = members_[rb].size();
    if (sa == 1 && sb == 1) {
      return AffineMap{1, G_.edge(cross[0]).distance};
    }
    if (sb == 1 || sa == 1) {
      const int single = sb == 1 ? rb : ra;
      const int multi = sb == 1 ? ra : rb;
      auto placed = place_singleton(multi, single, cross);
      if (!placed) return std::nullopt;
      const AffineMap single_to_multi{1, *placed};
      AffineMap f = sb == 1 ? single_to_multi : single_to_multi.inverse();
      if (!injective(ra, rb, f)) return std::nullopt;
      return f;
    }
    if (cross.size() < 2) return std::nullopt;
    // Candidate isometries from the first edge, filtered by all of them.
    std::vector<AffineMap> candidates;
    {
      const auto [x0, y0, d0] = oriented(ra, cross[0]);
      for (int sign : {1, -1}) {
        const Coordinate base = sign > 0 ? Coordinate(-y0) : y0;
        candidates.push_back(AffineMap{sign, x0 + d0 + base});
        candidates.push_back(AffineMap{sign, x0 - d0 + base});
      }
    }
    std::vector<AffineMap> survivors;
    for (const AffineMap& f : candidates) {
      if (std::find(survivors.begin(), survivors.end(), f) != survivors.end())
        continue;
      bool ok = true;
      for (int idx : cross) {
        const auto [x, y, d] = oriented(ra, idx);
        if (abs_coord(x - f.apply(y)) != d) {
          ok = false;
          break;
        }
      }
      if (ok) survivors.push_back(f);
    }
    if (survivors.size() != 1) return std::nullopt;
    if (!injective(ra, rb, survivors[0])) return std::nullopt;
    return survivors[0];
  }

  // (position on the ra side, position on the other side, distance).
  std::tuple<Coordinate, Coordinate, Coordinate> oriented(int ra, int edge_idx) {
    const Edge& e = G_.edge(edge_idx);
    const Coordinate pu = dsu_.position(e.u);
    const Coordinate pv = dsu_.position(e.v);
    if (dsu_.find(e.u) == ra) return {pu, pv, e.distance};
    return {pv, pu, e.distance};
  }

  // Unique position of the single point of `single` in `multi`'s frame, or
  // nothing. With one edge the mirror-occupancy rule applies; failed
  // occupancy registers a wish so growth of the cluster retries the pair.
  std::optional<Coordinate> place_singleton(int multi, int single,
                                            const std::vector<int>& cross) {
    std::vector<std::pair<Coordinate, Coordinate>> constraints;  // anchor, d
    constraints.reserve(cross.size());
    for (int idx : cross) {
      const Edge& e = G_.edge(idx);
      const int anchor = dsu_.find(e.u) == multi ? e.u : e.v;
      constraints.emplace_back(dsu_.position(anchor), e.distance);
    }
    const Coordinate lo = constraints[0].first - constraints[0].second;
    const Coordinate hi = constraints[0].first + constraints[0].second;
    if (cross.size() >= 2) {
      std::vector<Coordinate> cands{lo, hi};
      for (std::size_t i = 1; i < constraints.size() && !cands.empty(); ++i) {
        std::erase_if(cands, [&](const Coordinate& c) {
          return abs_coord(constraints[i].first - c) != constraints[i].second;
        });
      }
      if (cands.size() != 1) return std::nullopt;
      return cands[0];
    }
    const bool lo_occupied = occupancy_[multi].count(lo) > 0;
    const bool hi_occupied = occupancy_[multi].count(hi) > 0;
    if (lo_occupied == hi_occupied) {
      if (!lo_occupied) {
        const int u = members_[single][0];
        register_wish(multi, lo, u);
        register_wish(multi, hi, u);
      }
      return std::nullopt;
    }
    return lo_occupied ? hi : lo;
  }

  void register_wish(int root, const Coordinate& pos, int vertex) {
    auto& vec = wishes_[root][pos];
    if (std::find(vec.begin(), vec.end(), vertex) == vec.end()) {
      vec.push_back(vertex);
    }
  }

  bool injective(int ra, int rb, const AffineMap& f) {
    if (members_[ra].size() >= members_[rb].size()) {
      for (int m : members_[rb]) {
        if (occupancy_[ra].count(f.apply(dsu_.position(m)))) return false;
      }
    } else {
      const AffineMap g = f.inverse();
      for (int m : members_[ra]) {
        if (occupancy_[rb].count(g.apply(dsu_.position(m)))) return false;
      }
    }
    return true;
  }

  void merge(int ra, int rb, const AffineMap& f) {
    int keep = ra;
    int attach = rb;
    AffineMap g = f;  // attach-frame -> keep-frame
    const bool swap_roles =
        members_[ra].size() < members_[rb].size() ||
        (members_[ra].size() == members_[rb].size() &&
         min_label_[rb] < min_label_[ra]);
    if (swap_roles) {
      keep = rb;
      attach = ra;
      g = f.inverse();
    }
    dsu_.attach(attach, keep, g);

    // New occupancy entries may fulfil pending mirror wishes on the kept
    // side; transformed wishes may already be met by kept positions.
    for (int m : members_[attach]) {
      const Coordinate p = dsu_.position(m);
      auto hit = wishes_[keep].find(p);
      if (hit != wishes_[keep].end()) {
        for (int pend : hit->second) queue_.emplace_back(keep, pend);
      }
      occupancy_[keep].emplace(p, m);
    }
    for (auto& [pos, vec] : wishes_[attach]) {
      const Coordinate p = g.apply(pos);
      if (occupancy_[keep].count(p)) {
        for (int pend : vec) queue_.emplace_back(keep, pend);
      }
      auto& target = wishes_[keep][p];
      target.insert(target.end(), vec.begin(), vec.end());
    }
    wishes_[attach].clear();
    occupancy_[attach].clear();

    members_[keep].insert(members_[keep].end(), members_[attach].begin(),
                          members_[attach].end());
    members_[attach].clear();
    min_label_[keep] = std::min(min_label_[keep], min_label_[attach]);

    // Pairs that gained constraints are exactly those with an edge from the
    // attached side to a third set.
    std::vector<int> seen;
    for (int idx : incident_[attach]) {
      const Edge& e = G_.edge(idx);
      const int ru = dsu_.find(e.u);
      const int rv = dsu_.find(e.v);
      const int other = ru == keep ? rv : ru;
      if (other == keep) continue;
      if (std::find(seen.begin(), seen.end(), other) == seen.end()) {
        seen.push_back(other);
        queue_.emplace_back(keep, other);
      }
    }
    auto& big = incident_[keep];
    auto& small = incident_[attach];
    big.insert(big.end(), small.begin(), small.end());
    small.clear();
    small.shrink_to_fit();
  }

  std::vector<Cluster> extract() {
    std::vector<Cluster> out;
    for (int r = 0; r < n_; ++r) {
      if (dsu_.find(r) != r || members_[r].size() < 2) continue;
      Cluster c;
      c.members = members_[r];
      std::sort(c.members.begin(), c.members.end());
      c.positions.reserve(c.members.size());
      const Coordinate anchor = dsu_.position(c.members[0]);
      for (int m : c.members) c.positions.push_back(dsu_.position(m) - anchor);
      if (c.positions[1] < 0) {
        for (Coordinate& p : c.positions) p = -p;
      }
      out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
      return a.members[0] < b.members[0];
    });
    return out;
  }

  const DistanceGraph& G_;
  int n_;
  PositionDsu dsu_;
  std::vector<std::vector<int>> members_;
  std::vector<int> min_label_;
  std::vector<std::map<Coordinate, int>> occupancy_;
  std::vector<std::map<Coordinate, std::vector<int>>> wishes_;
  std::vector<std::vector<int>> incident_;
  std::deque<std::pair<int, int>> queue_;
};

}  // namespace

std::vector<Cluster> grow_clusters(const DistanceGraph& G) {
  return ClusterGrower(G).run();
}

namespace {

ReconReport report_from(std::vector<Cluster> clusters, int n,
                        long long deduced_edges) {
  ReconReport rep;
  rep.largest = 1;
  for (const Cluster& c : clusters) rep.largest = std::max(rep.largest, c.size());
  rep.full = rep.largest == n;
  rep.deduced_edges = deduced_edges;
  rep.clusters = std::move(clusters);
  return rep;
}

}  // namespace

ReconReport reconstruct(const DistanceGraph& G, const EngineParams& params) {
  const int n = G.size();
  const int cap = params.resolve_cycle_cap(n);
  const auto cycles = enumerate_short_cycles(G, cap, params.walk_budget);
  DistanceGraph aug = G;
  for (const Cycle& c : cycles) {
    const auto cert = certify_cycle(c, G);
    if (!cert) continue;
    for (const auto& [pr, dist] : deduce_cycle_distances(*cert)) {
      if (dist <= 0) continue;
      aug.add_edge(pr.first, pr.second, dist, Provenance::kDeduced);
    }
  }
  return report_from(grow_clusters(aug), n, aug.deduced_count());
}

EngineState::EngineState(int n, EngineParams params)
    : n_(n), params_(params), revealed_(n) {}

void EngineState::reveal(int u, int v, Coordinate distance) {
  if (revealed_.has_edge(u, v)) {
    throw ValidationError("pair already revealed");
  }
  if (u > v) std::swap(u, v);
  const auto it = deduced_.find({u, v});
  if (it != deduced_.end() && it->second != distance) {
    throw InconsistentDeduction("revealed distance contradicts a deduction");
  }
  revealed_.add_edge(u, v, distance, Provenance::kRevealed);
  ++reveal_count_;
  clusters_stale_ = true;

  const long long budget = params_.resolve_edge_budget(n_);
  if (reveal_count_ < budget) return;  // seed phase: accumulate only
  if (reveal_count_ == budget) {
    run_full_pipeline();
    return;
  }
  const int cap = params_.resolve_cycle_cap(n_);
  record_deductions(
      cycles_through_edge(revealed_, u, v, cap, params_.walk_budget));
}

void EngineState::run_full_pipeline() {
  const int cap = params_.resolve_cycle_cap(n_);
  record_deductions(
      enumerate_short_cycles(revealed_, cap, params_.walk_budget));
}

void EngineState::record_deductions(const std::vector<Cycle>& cycles) {
  for (const Cycle& c : cycles) {
    const auto cert = certify_cycle(c, revealed_);
    if (!cert) continue;
    for (auto& [pr, dist] : deduce_cycle_distances(*cert)) {
      if (dist <= 0) continue;
      const int idx = revealed_.find_edge(pr.first, pr.second);
      if (idx >= 0) {
        if (revealed_.edge(idx).distance != dist) {
          throw InconsistentDeduction("deduction contradicts a revealed edge");
        }
        continue;
      }
      auto [it, inserted] = deduced_.emplace(pr, dist);
      if (!inserted && it->second != dist) {
        throw InconsistentDeduction("conflicting deductions for one pair");
      }
    }
  }
}

void EngineState::refresh_clusters() {
  const long long budget = params_.resolve_edge_budget(n_);
  if (reveal_count_ < budget) {
    clusters_.clear();
    clusters_stale_ = false;
    return;
  }
  DistanceGraph aug = revealed_;
  for (const auto& [pr, dist] : deduced_) {
    aug.add_edge(pr.first, pr.second, dist, Provenance::kDeduced);
  }
  clusters_ = grow_clusters(aug);
  clusters_stale_ = false;
}

const std::vector<Cluster>& EngineState::certified_clusters() {
  if (clusters_stale_) refresh_clusters();
  return clusters_;
}

bool EngineState::certified_full() {
  const auto& clusters = certified_clusters();
  for (const Cluster& c : clusters) {
    if (c.size() == n_) return true;
  }
  return n_ == 1;
}

ReconReport EngineState::report() {
  const long long budget = params_.resolve_edge_budget(n_);
  long long deduced_edges = 0;
  if (reveal_count_ >= budget) {
    for (const auto& [pr, dist] : deduced_) {
      if (!revealed_.has_edge(pr.first, pr.second)) ++deduced_edges;
    }
  }
  return report_from(certified_clusters(), n_, deduced_edges);
}

}  // namespace linerecon
