#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "linerecon/engine.hpp"
#include "linerecon/errors.hpp"
#include "linerecon/rng.hpp"

using namespace linerecon;

namespace {

std::vector<std::int8_t> signs(std::initializer_list<int> s) {
  std::vector<std::int8_t> out;
  for (int x : s) out.push_back(static_cast<std::int8_t>(x));
  return out;
}

std::vector<std::pair<int, int>> complete_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

// Ground truth check: cluster positions must equal the true coordinates of
// its members after the same anchoring and orientation convention.
bool matches_truth(const Cluster& c, const PointSet& V) {
  std::vector<Coordinate> truth;
  truth.reserve(c.members.size());
  const Coordinate anchor = V.coord(c.members[0]);
  for (int m : c.members) truth.push_back(V.coord(m) - anchor);
  if (truth.size() > 1 && truth[1] < 0) {
    for (Coordinate& p : truth) p = -p;
  }
  return truth == c.positions;
}

}  // namespace

TEST_CASE("cycle_sign_solutions examples") {
  CHECK(cycle_sign_solutions({1, 2}, 3) ==
        std::vector<std::vector<std::int8_t>>{signs({1, 1})});

  const auto two = cycle_sign_solutions({1, 2, 1}, 2);
  REQUIRE(two.size() == 2);
  CHECK(std::set<std::vector<std::int8_t>>(two.begin(), two.end()) ==
        std::set<std::vector<std::int8_t>>{signs({1, 1, -1}),
                                           signs({-1, 1, 1})});

  CHECK(cycle_sign_solutions({1, 2, 3}, 6) ==
        std::vector<std::vector<std::int8_t>>{signs({1, 1, 1})});

  CHECK_THROWS_AS(cycle_sign_solutions({1}, 1), ValidationError);
  CHECK_THROWS_AS(cycle_sign_solutions({1, 0}, 1), ValidationError);
}

TEST_CASE("meet-in-the-middle agrees with exhaustive enumeration") {
  // k-1 = 21 exercises the split path; verify against the naive sums.
  SplitMix64 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    const int len = 21;
    std::vector<Coordinate> d;
    for (int i = 0; i < len; ++i) d.emplace_back(1 + rng.below(6));
    Coordinate closing = 0;
    std::vector<int> true_signs;
    for (int i = 0; i < len; ++i) {
      const bool plus = rng.bernoulli(0.5);
      true_signs.push_back(plus ? 1 : -1);
      closing += plus ? d[i] : Coordinate(-d[i]);
    }
    if (closing <= 0) continue;
    const auto got = cycle_sign_solutions(d, closing);
    std::vector<std::vector<std::int8_t>> want;
    for (std::uint64_t mask = 0; mask < (1ULL << len); ++mask) {
      Coordinate s = 0;
      for (int i = 0; i < len; ++i) {
        s += (mask >> i) & 1 ? d[i] : Coordinate(-d[i]);
      }
      if (s == closing) {
        std::vector<std::int8_t> v(len);
        for (int i = 0; i < len; ++i) v[i] = (mask >> i) & 1 ? 1 : -1;
        want.push_back(std::move(v));
      }
    }
    CHECK(got == want);
    CHECK(!got.empty());
  }
}

TEST_CASE("certify_cycle") {
  const PointSet V = make_point_set({0, 1, 3});
  const DistanceGraph tri = observe_distances(V, complete_pairs(3));
  const auto cert = certify_cycle(Cycle::canonical({0, 1, 2}), tri);
  REQUIRE(cert.has_value());
  CHECK(cert->signs == signs({1, 1}));
  CHECK(cert->distances == std::vector<Coordinate>{1, 2, 3});

  // parallelogram: coords 0,1,3,2 around the cycle
  const PointSet P = make_point_set({0, 1, 3, 2});
  const DistanceGraph quad =
      observe_distances(P, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK_FALSE(certify_cycle(Cycle::canonical({0, 1, 2, 3}), quad).has_value());

  CHECK_THROWS_AS(certify_cycle(Cycle::canonical({0, 1, 3}), quad),
                  ValidationError);
}

TEST_CASE("every triangle is certified") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet V = gen_generic(3, rng.next());
    const DistanceGraph tri = observe_distances(V, complete_pairs(3));
    CHECK(certify_cycle(Cycle::canonical({0, 1, 2}), tri).has_value());
  }
}

TEST_CASE("deduce_cycle_distances on the 4-cycle 0,1,3,6") {
  const PointSet V = make_point_set({0, 1, 3, 6});
  const DistanceGraph quad =
      observe_distances(V, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto cert = certify_cycle(Cycle::canonical({0, 1, 2, 3}), quad);
  REQUIRE(cert.has_value());
  const auto deduced = deduce_cycle_distances(*cert);
  std::map<std::pair<int, int>, Coordinate> got(deduced.begin(), deduced.end());
  REQUIRE(got.size() == 2);
  CHECK(got.at({0, 2}) == 3);
  CHECK(got.at({1, 3}) == 5);
}

TEST_CASE("triangles deduce nothing") {
  const PointSet V = make_point_set({0, 1, 3});
  const DistanceGraph tri = observe_distances(V, complete_pairs(3));
  const auto cert = certify_cycle(Cycle::canonical({0, 1, 2}), tri);
  REQUIRE(cert.has_value());
  CHECK(deduce_cycle_distances(*cert).empty());
}

TEST_CASE("deduce_cycle_distances on the 5-cycle 0,1,3,6,10") {
  const PointSet V = make_point_set({0, 1, 3, 6, 10});
  const DistanceGraph c5 =
      observe_distances(V, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const auto cert = certify_cycle(Cycle::canonical({0, 1, 2, 3, 4}), c5);
  REQUIRE(cert.has_value());
  const auto deduced = deduce_cycle_distances(*cert);
  std::map<std::pair<int, int>, Coordinate> got(deduced.begin(), deduced.end());
  REQUIRE(got.size() == 5);
  CHECK(got.at({0, 2}) == 3);
  CHECK(got.at({0, 3}) == 6);
  CHECK(got.at({1, 3}) == 5);
  CHECK(got.at({1, 4}) == 9);
  CHECK(got.at({2, 4}) == 7);
}

TEST_CASE("certificate exactness on random observed cycles") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const PointSet V = gen_generic(n, rng.next());
    const auto pairs = sample_gnp(n, 0.5, rng.next());
    const DistanceGraph G = observe_distances(V, pairs);
    for (const Cycle& c : enumerate_short_cycles(G, 6)) {
      const auto cert = certify_cycle(c, G);
      if (!cert) continue;
      for (const auto& [pr, dist] : deduce_cycle_distances(*cert)) {
        CHECK(dist == abs_coord(V.coord(pr.first) - V.coord(pr.second)));
      }
    }
  }
}

TEST_CASE("augment") {
  const PointSet V = make_point_set({0, 1, 3, 6});
  const DistanceGraph quad =
      observe_distances(V, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const DistanceGraph plus = augment(quad, {{{0, 2}, 3}});
  CHECK(plus.edge_count() == 5);
  CHECK(plus.deduced_count() == 1);

  const DistanceGraph same = augment(plus, {{{0, 2}, 3}});
  CHECK(same.edge_count() == 5);

  CHECK_THROWS_AS(augment(plus, {{{0, 2}, 4}}), InconsistentDeduction);
}

TEST_CASE("grow_clusters triangle") {
  const PointSet V = make_point_set({0, 1, 2});
  const auto clusters =
      grow_clusters(observe_distances(V, complete_pairs(3)));
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].members == std::vector<int>{0, 1, 2});
  CHECK(clusters[0].positions == std::vector<Coordinate>{0, 1, 2});
}

TEST_CASE("grow_clusters mirror-occupancy absorption") {
  // cluster {0,1} then edge (2,1) with d=1: candidates 2 and 0; 0 occupied.
  const PointSet V = make_point_set({0, 1, 2});
  const auto clusters = grow_clusters(observe_distances(V, {{0, 1}, {1, 2}}));
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].members == std::vector<int>{0, 1, 2});
  CHECK(matches_truth(clusters[0], V));
}

TEST_CASE("grow_clusters leaves unresolvable pendants out") {
  const PointSet V = make_point_set({0, 1, 5});
  const auto clusters = grow_clusters(observe_distances(V, {{0, 1}, {1, 2}}));
  REQUIRE(clusters.size() == 1);  // first-revealed pair wins, 5 stays out
  CHECK(clusters[0].size() == 2);
}

TEST_CASE("reconstruct on complete graphs is full") {
  SplitMix64 rng(41);
  for (int n : {2, 3, 6, 10}) {
    const PointSet V = gen_generic(n, rng.next());
    const auto rep = reconstruct(observe_distances(V, complete_pairs(n)));
    CHECK(rep.full);
    CHECK(rep.largest == n);
  }
}

TEST_CASE("reconstruct on the two-edge path of {0,1,3}") {
  const PointSet V = make_point_set({0, 1, 3});
  const auto rep = reconstruct(observe_distances(V, {{0, 1}, {1, 2}}));
  CHECK(rep.largest == 2);
  CHECK_FALSE(rep.full);
}

TEST_CASE("reconstruct on the product construction (2,3)") {
  const auto [V, pairs] = gen_product_construction(2, 3);
  const auto rep = reconstruct(observe_distances(V, pairs));
  CHECK(rep.largest == 2);
  CHECK_FALSE(rep.full);
}

TEST_CASE("engine soundness against ground truth") {
  SplitMix64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(12));
    const PointSet V = trial % 3 == 0 ? gen_progression(n)
                                      : gen_generic(n, rng.next());
    const double p = 0.1 + 0.8 * rng.unit();
    const DistanceGraph G = observe_distances(V, sample_gnp(n, p, rng.next()));
    const auto rep = reconstruct(G);
    for (const Cluster& c : rep.clusters) {
      CHECK(matches_truth(c, V));
    }
  }
}

TEST_CASE("walk budget propagates out of reconstruct") {
  std::vector<long long> coords;
  for (int i = 0; i < 9; ++i) coords.push_back(1LL << i);
  const PointSet V = make_point_set(coords);
  const DistanceGraph G = observe_distances(V, complete_pairs(9));
  EngineParams params;
  params.walk_budget = 20;
  CHECK_THROWS_AS(reconstruct(G, params), WalkBudgetExceeded);
}

TEST_CASE("online engine absorbs a vertex gaining a second anchor") {
  const PointSet V = make_point_set({0, 1, 4});
  EngineParams params;
  params.seed_edge_budget = 0;
  EngineState state(3, params);
  state.reveal(0, 1, abs_coord(V.coord(0) - V.coord(1)));
  CHECK(state.certified_clusters().size() == 1);
  CHECK_FALSE(state.certified_full());
  state.reveal(1, 2, abs_coord(V.coord(1) - V.coord(2)));
  CHECK_FALSE(state.certified_full());  // mirror of 4 over 1 is -2, not a point
  state.reveal(0, 2, abs_coord(V.coord(0) - V.coord(2)));
  CHECK(state.certified_full());
}

TEST_CASE("seed phase accumulates only") {
  EngineParams params;
  params.seed_edge_budget = 3;
  EngineState state(4, params);
  const PointSet V = make_point_set({0, 1, 2, 10});
  state.reveal(0, 1, 1);
  state.reveal(1, 2, 1);
  CHECK(state.certified_clusters().empty());
  CHECK_FALSE(state.certified_full());
  state.reveal(0, 2, 2);  // budget reached: pipeline runs
  REQUIRE(state.certified_clusters().size() == 1);
  CHECK(state.certified_clusters()[0].size() == 3);
}

TEST_CASE("duplicate reveal rejected") {
  EngineState state(3);
  state.reveal(0, 1, 1);
  CHECK_THROWS_AS(state.reveal(1, 0, 1), ValidationError);
}

TEST_CASE("online equals batch after every reveal") {
  SplitMix64 rng(67);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 24;
    const PointSet V = gen_generic(n, rng.next());
    const RevealSchedule sched = random_schedule(n, rng.next());
    for (int cap : {3, 4}) {
      EngineParams params;
      params.cycle_cap = cap;
      params.seed_edge_budget = 0;
      EngineState online(n, params);
      DistanceGraph prefix(n);
      for (const auto& [u, v] : sched.order) {
        const Coordinate d = abs_coord(V.coord(u) - V.coord(v));
        online.reveal(u, v, d);
        prefix.add_edge(u, v, d, Provenance::kRevealed);
        const ReconReport batch = reconstruct(prefix, params);
        REQUIRE(online.certified_clusters() == batch.clusters);
        CHECK(online.report().deduced_edges == batch.deduced_edges);
      }
      CHECK(online.certified_full());
    }
  }
}

TEST_CASE("cluster membership grows along a schedule") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 20;
    const PointSet V = trial % 2 == 0 ? gen_generic(n, rng.next())
                                      : gen_progression(n);
    const RevealSchedule sched = random_schedule(n, rng.next());
    EngineParams params;
    params.cycle_cap = 4;
    params.seed_edge_budget = 0;
    EngineState state(n, params);
    std::vector<std::set<int>> previous(n);
    for (const auto& [u, v] : sched.order) {
      state.reveal(u, v, abs_coord(V.coord(u) - V.coord(v)));
      std::vector<std::set<int>> current(n);
      for (const Cluster& c : state.certified_clusters()) {
        const std::set<int> mem(c.members.begin(), c.members.end());
        for (int m : c.members) current[m] = mem;
      }
      for (int x = 0; x < n; ++x) {
        CHECK(std::includes(current[x].begin(), current[x].end(),
                            previous[x].begin(), previous[x].end()));
      }
      previous = std::move(current);
    }
  }
}
