#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "shortedge/errors.hpp"
#include "shortedge/generators.hpp"
#include "shortedge/oracle.hpp"
#include "shortedge/short_edge.hpp"

namespace shortedge {
namespace {

RotationLabeling rooted(const Drawing& d, std::optional<std::int64_t> hint = {}) {
  const OuterVertex outer = outer_face_vertex(d, hint);
  return relabel_ccw(d, outer.vertex, outer.escape_direction);
}

TEST(Oracle, ConvexMinimumIsAHullEdge) {
  for (std::size_t m : {4, 7, 12}) {
    const Drawing d = convex_complete(m);
    const oracle::MinCrossingEdge best = oracle::brute_min_crossing_edge(d);
    EXPECT_EQ(best.count, 0U);
    EXPECT_EQ(best.ids, (std::pair<std::int64_t, std::int64_t>{0, 1}));
  }
}

TEST(Oracle, ConvexK4PerEdge) {
  const Drawing d = convex_complete(4);
  const std::vector<std::uint64_t> counts = oracle::per_edge_crossings(d);
  EXPECT_EQ(counts[d.edge_between(0, 2)], 1U);
  EXPECT_EQ(counts[d.edge_between(1, 3)], 1U);
  EXPECT_EQ(counts[d.edge_between(0, 1)], 0U);
}

TEST(Oracle, PerEdgeAgreesWithCrossingMatrix) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Drawing d = random_geometric_complete(18, seed);
    const CrossingMatrix c = crossing_matrix(d);
    const std::vector<std::uint64_t> counts = oracle::per_edge_crossings(d);
    for (std::size_t e = 0; e < d.edge_count(); ++e) EXPECT_EQ(counts[e], c.total(e));
  }
  const Drawing fig = testing::curved_k7();
  const CrossingMatrix c = crossing_matrix(fig);
  const std::vector<std::uint64_t> counts = oracle::per_edge_crossings(fig);
  for (std::size_t e = 0; e < fig.edge_count(); ++e) EXPECT_EQ(counts[e], c.total(e));
}

// Frozen after the first computation; any change means the geometry moved.
TEST(Oracle, RegressionRandomK10) {
  const Drawing d = random_geometric_complete(10, 42);
  const oracle::MinCrossingEdge best = oracle::brute_min_crossing_edge(d);
  EXPECT_EQ(best.count, 0U);
  EXPECT_EQ(best.ids, (std::pair<std::int64_t, std::int64_t>{0, 2}));
  const std::vector<std::uint64_t> counts = oracle::per_edge_crossings(d);
  EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), 258U);
  EXPECT_EQ(*std::max_element(counts.begin(), counts.end()), 15U);
}

TEST(Oracle, StabTableAgrees) {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + uniform_below(rng, 40);
    const SetFamily f = testing::random_weighted_family(rng, n, 1 + uniform_below(rng, 30), 4);
    const std::vector<long double> table = oracle::brute_stab_counts(f);
    ASSERT_EQ(table.size(), n * (n - 1) / 2);
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = u + 1; v <= n; ++v) {
        EXPECT_EQ(stab_count(f, u, v), table[oracle::pair_slot(n, u, v)]);
      }
    }
  }
  EXPECT_THROW(oracle::brute_stab_counts(SetFamily::from_sets(201, {{1}})), GuardError);
}

TEST(Oracle, TriangleSetsAgree) {
  const Drawing fig = testing::curved_k7();
  const RotationLabeling lf = rooted(fig, 0);
  const SetFamily ff = triangle_family(fig, lf);
  const auto fsets = oracle::brute_triangle_sets(fig, lf);
  ASSERT_EQ(fsets.size(), ff.size());
  for (std::size_t k = 0; k < ff.size(); ++k) EXPECT_EQ(ff.member(k).set.to_vector(), fsets[k]);

  const Drawing d = random_geometric_complete(20, 5);
  const RotationLabeling l = rooted(d);
  const SetFamily f = triangle_family(d, l);
  const auto sets = oracle::brute_triangle_sets(d, l);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(f.member(k).set.to_vector(), sets[k]);
}

TEST(Oracle, KappaPhiGammaClassificationAgree) {
  for (std::uint64_t seed : {1, 2}) {
    const Drawing d = random_geometric_complete(33, seed);
    const PipelineReport r = select_short_edge(d, PipelineConfig{});
    ASSERT_FALSE(r.fallback);
    const RotationLabeling l = rooted(d);
    const SetFamily f = triangle_family(d, l);
    const LowStabMatching m = key_matching(f, MatchConfig{});
    EXPECT_EQ(m.pairs, r.m1_pairs);
    EXPECT_EQ(oracle::brute_kappa(f, m.pairs), m.kappa);

    std::vector<VertexPair> m2;
    std::vector<std::uint64_t> values;
    for (const auto& [pair, value] : r.phi) {
      m2.push_back(pair);
      values.push_back(value);
    }
    EXPECT_EQ(oracle::brute_phi(d, l, m2), values);

    const Gamma1 g = build_gamma1(f, m);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t p = 0; p < g.out.size(); ++p) {
      for (std::uint32_t q : g.out[p]) arcs.emplace_back(p, q);
    }
    EXPECT_EQ(oracle::brute_gamma1_arcs(d, l, m.pairs), arcs);

    const CrossingMatrix c = crossing_matrix(d);
    for (const VertexPair& p : m.pairs) {
      const CrossingClasses classes = classify_crossings(d, l, p.first, p.second, m.leftover, f, c);
      EXPECT_EQ(oracle::brute_classification(d, l, p.first, p.second, m.leftover), classes.edges);
    }
  }
}

TEST(Oracle, PhiGuard) {
  const Drawing d = convex_complete(66);
  const RotationLabeling l = rooted(d);
  const std::vector<VertexPair> m2{{1, 2}};
  EXPECT_THROW(oracle::brute_phi(d, l, m2), GuardError);
}

TEST(Oracle, VennCellsAgree) {
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    const SetFamily f = testing::random_family(rng, 15, 8);
    std::vector<MemberKey> keys;
    for (const Member& m : f.members()) {
      if (uniform_below(rng, 2)) keys.push_back(m.key);
    }
    EXPECT_EQ(venn_cells(f, keys), oracle::brute_venn_cells(f, keys));
  }
  const SetFamily f = testing::random_family(rng, 12, 10);
  for (std::size_t m = 1; m <= 3; ++m) {
    EXPECT_EQ(dual_shatter_estimate(f, m, 1'000'000, 0).max_cells, oracle::brute_max_cells(f, m));
  }
  EXPECT_THROW(oracle::brute_max_cells(f, 5, 10), GuardError);
}

TEST(Oracle, Report) {
  const Drawing d = random_geometric_complete(9, 3);
  const std::vector<VertexPair> m2{{1, 2}, {3, 4}};
  const oracle::OracleReport r = oracle::build_report(d, {}, m2, 2);
  EXPECT_EQ(r.per_edge_crossings.size(), d.edge_count());
  EXPECT_EQ(r.min_crossing_edge.count, oracle::brute_min_crossing_edge(d).count);
  ASSERT_TRUE(r.stab_table.has_value());
  EXPECT_EQ(r.stab_table->size(), 28U);
  EXPECT_EQ(r.cell_counts.size(), 2U);
  ASSERT_TRUE(r.phi_table.has_value());
  EXPECT_EQ(r.phi_table->size(), 2U);
}

}  // namespace
}  // namespace shortedge
