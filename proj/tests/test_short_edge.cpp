#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "shortedge/constants.hpp"
#include "shortedge/errors.hpp"
#include "shortedge/generators.hpp"
#include "shortedge/oracle.hpp"
#include "shortedge/short_edge.hpp"

namespace shortedge {
namespace {

struct Instance {
  Drawing drawing;
  RotationLabeling labels;
  SetFamily triangles;
  LowStabMatching m1;
  CrossingMatrix crossings;
};

Instance build(Drawing d) {
  Instance inst;
  inst.drawing = std::move(d);
  const OuterVertex outer = outer_face_vertex(inst.drawing);
  inst.labels = relabel_ccw(inst.drawing, outer.vertex, outer.escape_direction);
  inst.triangles = triangle_family(inst.drawing, inst.labels);
  inst.m1 = key_matching(inst.triangles, MatchConfig{});
  inst.crossings = crossing_matrix(inst.drawing);
  return inst;
}

bool strictly_inside(Point a, Point b, Point c, Point p) {
  const int o1 = orient(a, b, p), o2 = orient(b, c, p), o3 = orient(c, a, p);
  return (o1 > 0 && o2 > 0 && o3 > 0) || (o1 < 0 && o2 < 0 && o3 < 0);
}

Gamma1 gamma_from_in_degrees(const std::vector<std::uint32_t>& in) {
  Gamma1 g;
  g.in_degree = in;
  g.out.resize(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) {
    g.nodes.push_back({static_cast<Vertex>(2 * k + 1), static_cast<Vertex>(2 * k + 2)});
  }
  return g;
}

TEST(Gamma1, ConvexHasNoArcs) {
  const Instance inst = build(convex_complete(33));
  const Gamma1 g = build_gamma1(inst.triangles, inst.m1);
  EXPECT_EQ(g.nodes, inst.m1.pairs);
  EXPECT_EQ(g.arc_count(), 0U);
}

TEST(Gamma1, ArcsMatchStabRelation) {
  for (std::uint64_t seed : {1, 2}) {
    const Instance inst = build(random_geometric_complete(33, seed));
    const Gamma1 g = build_gamma1(inst.triangles, inst.m1);
    const auto& pairs = inst.m1.pairs;
    std::uint64_t arcs = 0;
    std::vector<std::uint32_t> in(pairs.size(), 0);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const VertexSet& t = inst.triangles.member(inst.triangles.index_of({pairs[p].first, pairs[p].second})).set;
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        const bool arc = p != q && t.contains(pairs[q].first) != t.contains(pairs[q].second);
        EXPECT_EQ(g.has_arc(p, q), arc);
        arcs += arc;
        in[q] += arc;
      }
    }
    EXPECT_EQ(g.arc_count(), arcs);
    EXPECT_EQ(g.in_degree, in);
    EXPECT_LE(static_cast<double>(arcs), pairs.size() * kFittedConstants.c3 * std::sqrt(32.0));
  }
}

TEST(FilterM2, ThresholdIsStrict) {
  // n = 16: n^{3/4} = 8 exactly.
  EXPECT_EQ(filter_m2(gamma_from_in_degrees({0, 0, 0}), 16).size(), 3U);
  const auto m2 = filter_m2(gamma_from_in_degrees({8, 7, 0}), 16);
  EXPECT_EQ(m2, (std::vector<VertexPair>{{3, 4}, {5, 6}}));
  EXPECT_THROW(filter_m2(gamma_from_in_degrees({8, 9}), 16), EmptyM2Error);
}

TEST(FilterM2, SizeOnRandomInstances) {
  for (std::uint64_t seed : {3, 4, 5}) {
    const Instance inst = build(random_geometric_complete(65, seed));
    const Gamma1 g = build_gamma1(inst.triangles, inst.m1);
    const auto m2 = filter_m2(g, 64);
    const double n = 64, n34 = std::pow(n, 0.75);
    EXPECT_GE(static_cast<double>(m2.size()), n / 2 - n34 - kFittedConstants.c3 * n34);
    EXPECT_LE(static_cast<double>(inst.m1.pairs.size() - m2.size()),
              static_cast<double>(g.arc_count()) / n34);
  }
}

TEST(Phi, ConvexIsZeroAndRandomMatchesGeometry) {
  const Instance convex = build(convex_complete(33));
  for (const VertexPair& p : convex.m1.pairs) {
    EXPECT_EQ(phi(convex.drawing, convex.labels, convex.m1.pairs, p.first, p.second), 0U);
  }
  const Instance inst = build(random_geometric_complete(33, 9));
  const auto& l = inst.labels;
  const auto pos = [&](Vertex k) { return inst.drawing.position(l.vertex_of[k]); };
  for (Vertex i = 1; i <= l.n(); i += 3) {
    for (Vertex j = i + 1; j <= l.n(); j += 2) {
      std::uint64_t expected = 0;
      for (const VertexPair& q : inst.m1.pairs) {
        expected += strictly_inside(pos(0), pos(i), pos(j), pos(q.first)) &&
                    strictly_inside(pos(0), pos(i), pos(j), pos(q.second));
      }
      EXPECT_EQ(phi(inst.drawing, l, inst.m1.pairs, i, j), expected);
      const std::span<const VertexPair> half(inst.m1.pairs.data(), inst.m1.pairs.size() / 2);
      EXPECT_LE(phi(inst.drawing, l, half, i, j), expected);
    }
  }
  EXPECT_THROW(phi(inst.drawing, l, inst.m1.pairs, 5, 5), RangeError);
}

TEST(Classify, PartitionAndFirstMatch) {
  const Instance inst = build(random_geometric_complete(33, 11));
  const auto& l = inst.labels;
  const Drawing& d = inst.drawing;
  for (const VertexPair& p : inst.m1.pairs) {
    const Vertex x = p.first, y = p.second;
    const CrossingClasses c =
        classify_crossings(d, l, x, y, inst.m1.leftover, inst.triangles, inst.crossings);
    const std::size_t e = d.edge_between(l.vertex_of[x], l.vertex_of[y]);
    EXPECT_EQ(c.total(), inst.crossings.total(e));
    for (int k = 0; k < 5; ++k) {
      for (std::size_t f : c.edges[k]) {
        EXPECT_TRUE(inst.crossings.crosses(e, f));
        const Vertex a = l.label_of[d.edge(f).a], b = l.label_of[d.edge(f).b];
        const bool e0 = a == 0 || b == 0;
        const auto in_x = [&](Vertex v) {
          return std::find(inst.m1.leftover.begin(), inst.m1.leftover.end(), v) != inst.m1.leftover.end();
        };
        const bool e1 = !e0 && (in_x(a) || in_x(b));
        const auto between = [&](Vertex v) { return x < v && v < y; };
        const bool e2 = !e0 && (between(a) || between(b));
        bool e3 = false;
        if (!e0) {
          const VertexSet& t =
              inst.triangles.member(inst.triangles.index_of({std::min(a, b), std::max(a, b)})).set;
          e3 = t.contains(x) != t.contains(y);
        }
        const bool flags[] = {e0, e1, e2, e3, true};
        int first = 0;
        while (!flags[first]) ++first;
        EXPECT_EQ(first, k) << "edge (" << a << ',' << b << ") against (" << x << ',' << y << ')';
      }
    }
  }
}

TEST(USplit, PartitionIdentity) {
  const Instance inst = build(random_geometric_complete(33, 12));
  const std::size_t n = inst.labels.n();
  for (Vertex x = 1; x <= n; x += 5) {
    for (Vertex y = x + 1; y <= n; y += 3) {
      const USplit s = u1_u2_split(inst.drawing, inst.labels, x, y, inst.crossings);
      std::vector<Vertex> all = s.u1;
      all.insert(all.end(), s.u2.begin(), s.u2.end());
      for (Vertex v = x; v <= y; ++v) all.push_back(v);
      std::sort(all.begin(), all.end());
      ASSERT_EQ(all.size(), n);
      for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(all[k], k + 1);
      for (Vertex u : s.u1) {
        EXPECT_TRUE(inst.crossings.crosses(
            inst.drawing.edge_between(inst.labels.root, inst.labels.vertex_of[u]),
            inst.drawing.edge_between(inst.labels.vertex_of[x], inst.labels.vertex_of[y])));
      }
    }
  }
}

TEST(USplit, ConvexHasEmptyU1) {
  const Instance inst = build(convex_complete(33));
  for (Vertex x = 1; x < 32; x += 4) {
    for (Vertex y = x + 1; y <= 32; y += 7) {
      EXPECT_TRUE(u1_u2_split(inst.drawing, inst.labels, x, y, inst.crossings).u1.empty());
    }
  }
}

TEST(Observation1, HoldsOnEveryPair) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Instance inst = build(random_geometric_complete(33, seed));
    const std::size_t n = inst.labels.n();
    for (Vertex x = 1; x <= n; ++x) {
      for (Vertex y = x + 1; y <= n; ++y) {
        const CrossingClasses c = classify_crossings(inst.drawing, inst.labels, x, y, {},
                                                     inst.triangles, inst.crossings);
        // Straight-line drawings seen from a hull vertex: an edge crossing
        // v_x v_y from outside the index interval always separates v_x from
        // v_y inside its triangle, so E4 stays empty.
        EXPECT_TRUE(c.edges[4].empty());
        const USplit s = u1_u2_split(inst.drawing, inst.labels, x, y, inst.crossings);
        EXPECT_TRUE(verify_observation1(inst.drawing, inst.labels, c.edges[4], s));
      }
    }
  }
  const Instance inst = build(convex_complete(33));
  EXPECT_TRUE(verify_observation1(inst.drawing, inst.labels, {}, USplit{}));
}

TEST(Observation1, CorruptedSplitIsCaught) {
  const Instance inst = build(random_geometric_complete(33, 4));
  const auto& l = inst.labels;
  const Vertex a = 3;
  const Vertex b = 17;
  const std::vector<std::size_t> e4{inst.drawing.edge_between(l.vertex_of[a], l.vertex_of[b])};
  USplit s;
  s.u1 = {a, 5};
  s.u2 = {b, 20};
  EXPECT_TRUE(verify_observation1(inst.drawing, l, e4, s));
  // Both endpoints now sit in U2.
  s.u1 = {5};
  s.u2 = {a, b, 20};
  EXPECT_FALSE(verify_observation1(inst.drawing, l, e4, s));
  s.u1 = {a, b};
  s.u2 = {5};
  EXPECT_FALSE(verify_observation1(inst.drawing, l, e4, s));
}

TEST(Observation1, NonemptyE4OnCurvedFixture) {
  const Drawing d = testing::curved_e4();
  ASSERT_TRUE(validate_simple(d).empty());
  const OuterVertex outer = outer_face_vertex(d, 3);
  ASSERT_EQ(outer.vertex, 3u);
  const RotationLabeling l = relabel_ccw(d, outer.vertex, outer.escape_direction);
  const SetFamily f = triangle_family(d, l);
  const CrossingMatrix cm = crossing_matrix(d);
  const CrossingClasses c = classify_crossings(d, l, 1, 2, {}, f, cm);
  ASSERT_FALSE(c.edges[4].empty());
  EXPECT_EQ(c.edges, oracle::brute_classification(d, l, 1, 2, {}));

  USplit s = u1_u2_split(d, l, 1, 2, cm);
  EXPECT_TRUE(verify_observation1(d, l, c.edges[4], s));
  // Swap one endpoint of the first E4 edge across the split.
  const DrawingEdge& e = d.edge(c.edges[4].front());
  const Vertex a = l.label_of[e.a];
  auto& from = std::find(s.u1.begin(), s.u1.end(), a) != s.u1.end() ? s.u1 : s.u2;
  auto& to = &from == &s.u1 ? s.u2 : s.u1;
  from.erase(std::find(from.begin(), from.end(), a));
  to.push_back(a);
  std::sort(to.begin(), to.end());
  EXPECT_FALSE(verify_observation1(d, l, c.edges[4], s));
}

TEST(SelectShortEdge, ConvexK33) {
  const Drawing d = convex_complete(33);
  const PipelineReport r = select_short_edge(d, pipeline_config(kFittedConstants));
  EXPECT_FALSE(r.fallback);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(static_cast<long double>(r.crossing_count), r.bound);
  EXPECT_EQ(oracle::brute_min_crossing_edge(d).count, 0U);
  EXPECT_TRUE(r.matching_report.all_passed());
  EXPECT_TRUE(r.observation1);
  // The chosen edge really has the reported crossing count.
  const CrossingMatrix c = crossing_matrix(d);
  const std::size_t e = d.edge_between(static_cast<std::size_t>(r.chosen_ids.first),
                                       static_cast<std::size_t>(r.chosen_ids.second));
  EXPECT_EQ(c.total(e), r.crossing_count);
  // Chosen pair is the lexicographic argmin of phi.
  ASSERT_FALSE(r.phi.empty());
  auto best = r.phi.front();
  for (const auto& entry : r.phi) {
    if (entry.second < best.second || (entry.second == best.second && entry.first < best.first)) best = entry;
  }
  EXPECT_EQ(r.chosen, best.first);
}

TEST(SelectShortEdge, SmallInputFallsBackToOracle) {
  const Drawing d = random_geometric_complete(12, 5);
  const PipelineReport r = select_short_edge(d, pipeline_config(kFittedConstants));
  EXPECT_TRUE(r.fallback);
  const oracle::MinCrossingEdge best = oracle::brute_min_crossing_edge(d);
  EXPECT_EQ(r.crossing_count, best.count);
  EXPECT_EQ(r.chosen_ids, best.ids);
}

TEST(SelectShortEdge, Deterministic) {
  const Drawing d = random_geometric_complete(41, 2);
  PipelineConfig config = pipeline_config(kFittedConstants);
  const PipelineReport a = select_short_edge(d, config);
  config.jobs = 4;
  const PipelineReport b = select_short_edge(d, config);
  EXPECT_EQ(a.chosen, b.chosen);
  EXPECT_EQ(a.crossing_count, b.crossing_count);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.e_sizes, b.e_sizes);
  EXPECT_EQ(a.m1_pairs, b.m1_pairs);
}

TEST(SelectShortEdge, DiagnosticsAndSandwich) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Drawing d = random_geometric_complete(33, seed);
    const PipelineReport r = select_short_edge(d, pipeline_config(kFittedConstants));
    ASSERT_FALSE(r.fallback);
    std::size_t sum = 0;
    for (std::size_t s : r.e_sizes) sum += s;
    EXPECT_EQ(sum, r.crossing_count);
    EXPECT_LE(oracle::brute_min_crossing_edge(d).count, r.crossing_count);
    EXPECT_EQ(r.m1_size + r.m1_size + r.leftover_size, 32U);
    for (const BoundCheck& c : r.diagnostics) {
      if (c.name == "classification_partition" || c.name == "u_partition" || c.name == "observation1") {
        EXPECT_TRUE(c.passed) << c.name;
      }
    }
  }
}

TEST(SelectShortEdge, StageErrors) {
  try {
    select_short_edge(testing::double_crossing(), PipelineConfig{});
    ADD_FAILURE() << "expected a StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "validate");
  }
  try {
    select_short_edge(testing::curved_k7(), PipelineConfig{});
    ADD_FAILURE() << "expected a StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "outer_face");
  }
  PipelineConfig hinted;
  hinted.hint = 0;
  const PipelineReport r = select_short_edge(testing::curved_k7(), hinted);
  EXPECT_TRUE(r.fallback);
  EXPECT_EQ(r.root_id, 0);
}

}  // namespace
}  // namespace shortedge
