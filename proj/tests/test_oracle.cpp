#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "linerecon/engine.hpp"
#include "linerecon/errors.hpp"
#include "linerecon/oracle.hpp"
#include "linerecon/process_sim.hpp"
#include "linerecon/rng.hpp"

using namespace linerecon;

namespace {

std::vector<std::pair<int, int>> complete_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

std::vector<int> all_labels(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Canonical restriction of the true coordinates to one component.
std::vector<Coordinate> truth_class(const PointSet& V,
                                    const std::vector<int>& members) {
  std::vector<Coordinate> pos;
  pos.reserve(members.size());
  for (int m : members) pos.push_back(V.coord(m));
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

}  // namespace

TEST_CASE("enumerate_embeddings two-edge path of {0,1,3}") {
  const PointSet V = make_point_set({0, 1, 3});
  const DistanceGraph G = observe_distances(V, {{0, 1}, {1, 2}});
  const auto comps = enumerate_embeddings(G);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].classes.size() == 2);  // {0,1,3} and its {0,1,-1} rival
}

TEST_CASE("enumerate_embeddings two-edge path of {0,1,2} collapses") {
  const PointSet V = make_point_set({0, 1, 2});
  const DistanceGraph G = observe_distances(V, {{0, 1}, {1, 2}});
  const auto comps = enumerate_embeddings(G);
  REQUIRE(comps.size() == 1);
  // the 0->2 collision assignment is rejected as non-injective and the two
  // survivors are reflections of each other
  CHECK(comps[0].classes.size() == 1);
}

TEST_CASE("single edge has one class") {
  const PointSet V = make_point_set({5, 9});
  const auto comps = enumerate_embeddings(observe_distances(V, {{0, 1}}));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].classes.size() == 1);
}

TEST_CASE("canonicalization is idempotent and reflection-invariant") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const PointSet V = gen_generic(n, rng.next());
    const DistanceGraph G =
        observe_distances(V, sample_gnp(n, 0.6, rng.next()));
    for (const auto& comp : enumerate_embeddings(G)) {
      for (const auto& cls : comp.classes) {
        // reflected positions canonicalize to the same tuple
        std::vector<Coordinate> reflected;
        for (const auto& p : cls.positions) reflected.push_back(-p);
        const auto [mn, mx] =
            std::minmax_element(reflected.begin(), reflected.end());
        const Coordinate lo = *mn;
        const Coordinate hi = *mx;
        std::vector<Coordinate> a(reflected.size());
        std::vector<Coordinate> b(reflected.size());
        for (std::size_t i = 0; i < reflected.size(); ++i) {
          a[i] = reflected[i] - lo;
          b[i] = hi - reflected[i];
        }
        CHECK(std::min(a, b) == cls.positions);
      }
    }
  }
}

TEST_CASE("ground-truth class always appears") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const PointSet V = trial % 2 == 0 ? gen_generic(n, rng.next())
                                      : gen_progression(n);
    const DistanceGraph G =
        observe_distances(V, sample_gnp(n, 0.4, rng.next()));
    for (const auto& comp : enumerate_embeddings(G)) {
      const auto truth = truth_class(V, comp.members);
      bool found = false;
      for (const auto& cls : comp.classes) {
        if (cls.positions == truth) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("oracle cap") {
  const PointSet V = gen_generic(16, 1);
  const DistanceGraph G = observe_distances(V, complete_pairs(16));
  CHECK_THROWS_AS(enumerate_embeddings(G, 14), OracleCapExceeded);
  CHECK_NOTHROW(enumerate_embeddings(G, 16));
}

TEST_CASE("deducible_pairs") {
  const PointSet V = make_point_set({0, 1, 3});
  const DistanceGraph path = observe_distances(V, {{0, 1}, {1, 2}});
  const auto ded = deducible_pairs(path);
  const std::set<std::pair<int, int>> got(ded.begin(), ded.end());
  CHECK(got.count({0, 1}));
  CHECK(got.count({1, 2}));
  CHECK_FALSE(got.count({0, 2}));  // 3 vs 1 across the two classes

  const auto tri = deducible_pairs(observe_distances(V, complete_pairs(3)));
  CHECK(tri.size() == 3);
}

TEST_CASE("revealed pairs are always deducible") {
  SplitMix64 rng(22);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(7));
    const PointSet V = gen_generic(n, rng.next());
    const DistanceGraph G =
        observe_distances(V, sample_gnp(n, 0.5, rng.next()));
    const auto ded = deducible_pairs(G);
    const std::set<std::pair<int, int>> got(ded.begin(), ded.end());
    for (const Edge& e : G.edges()) {
      CHECK(got.count({e.u, e.v}));
    }
  }
}

TEST_CASE("is_reconstructible_set basics") {
  const PointSet V = make_point_set({0, 1, 3});
  const DistanceGraph path = observe_distances(V, {{0, 1}, {1, 2}});
  CHECK(is_reconstructible_set({0}, path));
  CHECK(is_reconstructible_set({0, 1}, path));
  CHECK_FALSE(is_reconstructible_set({0, 1, 2}, path));

  const DistanceGraph full = observe_distances(V, complete_pairs(3));
  CHECK(is_reconstructible_set({0, 1, 2}, full));
}

TEST_CASE("cross-component sets are never reconstructible") {
  const PointSet V = make_point_set({0, 1, 10, 11});
  const DistanceGraph G = observe_distances(V, {{0, 1}, {2, 3}});
  CHECK_FALSE(is_reconstructible_set({0, 2}, G));
  CHECK(is_reconstructible_set({0, 1}, G));
  CHECK(is_reconstructible_set({2, 3}, G));
}

TEST_CASE("pair-route equals the direct definition on small graphs") {
  SplitMix64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));  // n <= 8
    const PointSet V = trial % 2 == 0 ? gen_generic(n, rng.next())
                                      : gen_progression(n);
    const DistanceGraph G =
        observe_distances(V, sample_gnp(n, 0.45, rng.next()));
    for (int rep = 0; rep < 6; ++rep) {
      std::vector<int> U;
      for (int v = 0; v < n; ++v) {
        if (rng.bernoulli(0.5)) U.push_back(v);
      }
      CHECK(is_reconstructible_set(U, G) == is_reconstructible_set_direct(U, G));
    }
  }
}

TEST_CASE("downward closure of reconstructibility") {
  SplitMix64 rng(39);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(5));
    const PointSet V = gen_generic(n, rng.next());
    const DistanceGraph G =
        observe_distances(V, sample_gnp(n, 0.6, rng.next()));
    std::vector<int> U;
    for (int v = 0; v < n; ++v) {
      if (rng.bernoulli(0.7)) U.push_back(v);
    }
    if (!is_reconstructible_set(U, G)) continue;
    std::vector<int> sub;
    for (int v : U) {
      if (rng.bernoulli(0.6)) sub.push_back(v);
    }
    CHECK(is_reconstructible_set(sub, G));
  }
}

TEST_CASE("structural necessity: struct false implies not reconstructible") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const PointSet V = trial % 2 == 0 ? gen_generic(n, rng.next())
                                      : gen_progression(n);
    const DistanceGraph G =
        observe_distances(V, sample_gnp(n, 0.35, rng.next()));
    if (!structural_condition(G, V)) {
      CHECK_FALSE(is_reconstructible_set(all_labels(n), G));
    }
  }
}

TEST_CASE("largest_reconstructible_set") {
  for (const auto [k, l] : {std::pair(2, 2), std::pair(3, 3)}) {
    const auto [V, pairs] = gen_product_construction(k, l);
    const DistanceGraph G = observe_distances(V, pairs);
    CHECK(largest_reconstructible_set(G).size() == static_cast<std::size_t>(k));
  }
  const PointSet V = gen_generic(7, 5);
  const DistanceGraph full = observe_distances(V, complete_pairs(7));
  CHECK(largest_reconstructible_set(full) == all_labels(7));
}

TEST_CASE("largest set ties resolve to the lexicographically least") {
  // two disjoint edges: all size-2 sets of one component tie; {0,1} wins
  const PointSet V = make_point_set({0, 1, 10, 11});
  const DistanceGraph G = observe_distances(V, {{2, 3}, {0, 1}});
  CHECK(largest_reconstructible_set(G) == std::vector<int>{0, 1});
}

TEST_CASE("hitting_time_exact examples") {
  const PointSet V = make_point_set({0, 1, 2});
  RevealSchedule s;
  s.n = 3;
  s.order = {{0, 2}, {0, 1}, {1, 2}};
  CHECK(hitting_time_exact(V, s) == 3);
  s.order = {{0, 1}, {1, 2}, {0, 2}};
  CHECK(hitting_time_exact(V, s) == 2);

  const PointSet two = make_point_set({4, 9});
  RevealSchedule s2;
  s2.n = 2;
  s2.order = {{0, 1}};
  CHECK(hitting_time_exact(two, s2) == 1);
}

TEST_CASE("hitting time never precedes the structural condition") {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(6));
    const PointSet V = trial % 2 == 0 ? gen_generic(n, rng.next())
                                      : gen_progression(n);
    const RevealSchedule s = random_schedule(n, rng.next());
    const long long tau = hitting_time_exact(V, s);
    DistanceGraph G(n);
    long long first_struct = -1;
    long long t = 0;
    for (const auto& [u, v] : s.order) {
      ++t;
      G.add_edge(u, v, abs_coord(V.coord(u) - V.coord(v)));
      if (first_struct < 0 && structural_condition(G, V)) first_struct = t;
    }
    REQUIRE(first_struct >= 1);
    CHECK(tau >= first_struct);
  }
}

TEST_CASE("engine clusters pass the oracle") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const PointSet V = trial % 2 == 0 ? gen_generic(n, rng.next())
                                      : gen_progression(n);
    const double p = 0.1 + 0.8 * rng.unit();
    const DistanceGraph G = observe_distances(V, sample_gnp(n, p, rng.next()));
    for (const Cluster& c : reconstruct(G).clusters) {
      CHECK(is_reconstructible_set(c.members, G));
    }
  }
}
