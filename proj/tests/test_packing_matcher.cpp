#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "shortedge/drawing.hpp"
#include "shortedge/errors.hpp"
#include "shortedge/generators.hpp"
#include "shortedge/packing_matcher.hpp"

namespace shortedge {
namespace {

SetFamily rooted_triangles(const Drawing& drawing) {
  const OuterVertex outer = outer_face_vertex(drawing);
  return triangle_family(drawing, relabel_ccw(drawing, outer.vertex, outer.escape_direction));
}

std::size_t brute_unweighted(const SetFamily& f, Vertex u, Vertex v) {
  std::size_t c = 0;
  for (const Member& m : f.members()) c += m.set.contains(u) != m.set.contains(v);
  return c;
}

TEST(GreedyNet, LargeDeltaGivesFirstVertex) {
  const SetFamily f = SetFamily::from_sets(5, {{1, 2}, {3}, {2, 5}});
  const long double w = f.total_weight().value();
  EXPECT_EQ(greedy_net(f, 2 * w), std::vector<Vertex>{1});
}

TEST(GreedyNet, SmallDeltaKeepsSeparatedVertices) {
  const SetFamily f = SetFamily::from_sets(4, {{1}, {2}, {3}});
  EXPECT_EQ(greedy_net(f, 0.5L), (std::vector<Vertex>{1, 2, 3, 4}));
}

TEST(GreedyNet, RejectsNonPositiveDelta) {
  const SetFamily f = SetFamily::from_sets(2, {{1}});
  EXPECT_THROW(greedy_net(f, 0), RangeError);
}

TEST(GreedyNet, SeparatedAndMaximal) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const SetFamily f = testing::random_weighted_family(rng, 20, 12, 3);
    const long double delta = 1.0L + static_cast<long double>(uniform_below(rng, 40));
    const std::vector<Vertex> net = greedy_net(f, delta);
    for (std::size_t a = 0; a < net.size(); ++a) {
      for (std::size_t b = a + 1; b < net.size(); ++b) {
        EXPECT_GT(stab_count(f, net[a], net[b]), delta);
      }
    }
    for (Vertex v = 1; v <= 20; ++v) {
      if (std::find(net.begin(), net.end(), v) != net.end()) continue;
      EXPECT_TRUE(std::any_of(net.begin(), net.end(),
                              [&](Vertex u) { return stab_count(f, u, v) <= delta; }));
    }
  }
}

TEST(PartitionLowStab, Examples) {
  const SetFamily f = SetFamily::from_sets(3, {{1}});
  const StabPartition p = partition_low_stab(f, 0.4L);
  EXPECT_EQ(p.parts, (std::vector<std::vector<Vertex>>{{1}, {2, 3}}));
  EXPECT_EQ(pigeon_subset(f, 0.4L), (std::vector<Vertex>{2, 3}));

  const long double w = f.total_weight().value();
  EXPECT_EQ(partition_low_stab(f, 2 * w).parts.size(), 1U);
  EXPECT_EQ(pigeon_subset(f, 2 * w), (std::vector<Vertex>{1, 2, 3}));
}

TEST(PartitionLowStab, SamePartPairsWithinTwoDelta) {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 10 + uniform_below(rng, 20);
    const SetFamily f = testing::random_weighted_family(rng, n, 15, 2);
    const long double delta = 0.5L + static_cast<long double>(uniform_below(rng, 30));
    const StabPartition p = partition_low_stab(f, delta);
    std::vector<Vertex> all;
    for (const auto& part : p.parts) {
      all.insert(all.end(), part.begin(), part.end());
      for (Vertex u : part) {
        for (Vertex v : part) {
          if (u < v) EXPECT_LE(stab_count(f, u, v), 2 * delta);
        }
      }
    }
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), n);
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(all[k], k + 1);

    const std::vector<Vertex> u = pigeon_subset(f, delta);
    EXPECT_GE(u.size() * p.parts.size(), n);
  }
}

TEST(RefineByIndex, GreedySpanCut) {
  StabPartition p;
  p.parts = {{1, 2, 9}};
  EXPECT_EQ(refine_by_index(p, 5).parts, (std::vector<std::vector<Vertex>>{{1, 2}, {9}}));
  p.parts = {{1, 3, 5, 7, 9, 11}, {2, 4}};
  EXPECT_EQ(refine_by_index(p, 4).parts,
            (std::vector<std::vector<Vertex>>{{1, 3, 5}, {7, 9, 11}, {2, 4}}));
  EXPECT_EQ(refine_by_index(p, 100).parts, p.parts);
  EXPECT_THROW(refine_by_index(p, 0.5L), RangeError);
}

TEST(RefineByIndex, PartCountBound) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + uniform_below(rng, 60);
    StabPartition p;
    p.parts.resize(1 + uniform_below(rng, 4));
    for (Vertex v = 1; v <= n; ++v) p.parts[uniform_below(rng, p.parts.size())].push_back(v);
    std::erase_if(p.parts, [](const auto& part) { return part.empty(); });
    const long double width = 1 + static_cast<long double>(uniform_below(rng, n));
    const StabPartition r = refine_by_index(p, width);
    EXPECT_LE(r.parts.size(),
              p.parts.size() * static_cast<std::size_t>(std::ceil(n / width)));
    for (const auto& part : r.parts) EXPECT_LE(part.back() - part.front(), width);
  }
}

TEST(KeyMatching, EmptyMembers) {
  const SetFamily f = SetFamily::from_sets(32, std::vector<std::vector<Vertex>>(10));
  const LowStabMatching m = key_matching(f, MatchConfig{});
  EXPECT_EQ(m.pairs.size(), 3U);
  EXPECT_EQ(m.max_kappa(), 0U);
  EXPECT_TRUE(verify_matching(f, m, MatchConfig{}).all_passed());
}

TEST(KeyMatching, Errors) {
  const SetFamily small = SetFamily::from_sets(16, {{1}});
  EXPECT_THROW(key_matching(small, MatchConfig{}), TooSmallError);
  const std::uint32_t w[] = {1};
  const SetFamily weighted = SetFamily::from_sets(40, {{1}}).reweighted(w);
  EXPECT_THROW(key_matching(weighted, MatchConfig{}), PreconditionError);
  MatchConfig bad;
  bad.c3 = 1.5;
  EXPECT_THROW(key_matching(SetFamily::from_sets(40, {{1}}), bad), RangeError);
}

TEST(KeyMatching, ConvexK33) {
  const SetFamily f = rooted_triangles(convex_complete(33));
  ASSERT_EQ(f.ground_size(), 32U);
  const LowStabMatching m = key_matching(f, MatchConfig{});
  EXPECT_EQ(m.span_limit, 13U);
  for (const VertexPair& p : m.pairs) EXPECT_LE(p.second - p.first, 13U);
  EXPECT_LE(m.max_kappa(), 2.0 * std::sqrt(32.0));
  EXPECT_TRUE(verify_matching(f, m, MatchConfig{}).all_passed());
}

// Replays the selection rule step by step with plain integer weights and
// checks every choice, the kappa ledger and the total-weight identity.
void replay(const SetFamily& f, const LowStabMatching& m) {
  const std::size_t n = f.ground_size();
  const long double width = std::pow(static_cast<long double>(n), 0.75L);
  const StabPartition parts = refine_by_index(partition_low_stab(f, m.delta0), std::floor(width));
  std::vector<int> part_of(n + 1, -1);
  for (std::size_t k = 0; k < parts.parts.size(); ++k) {
    for (Vertex v : parts.parts[k]) part_of[v] = static_cast<int>(k);
  }
  std::vector<std::uint32_t> kappa(f.size(), 0);
  std::vector<char> used(n + 1, 0);
  auto weighted = [&](Vertex u, Vertex v) {
    unsigned __int128 s = 0;
    for (std::size_t q = 0; q < f.size(); ++q) {
      if (f.member(q).set.contains(u) != f.member(q).set.contains(v)) s += (unsigned __int128)1 << kappa[q];
    }
    return s;
  };
  unsigned __int128 total = f.size();
  for (const VertexPair& chosen : m.pairs) {
    ASSERT_EQ(part_of[chosen.first], part_of[chosen.second]);
    const unsigned __int128 s = weighted(chosen.first, chosen.second);
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = u + 1; v <= n; ++v) {
        if (used[u] || used[v] || part_of[u] != part_of[v]) continue;
        const unsigned __int128 t = weighted(u, v);
        ASSERT_TRUE(s < t || (s == t && chosen <= VertexPair{u, v}))
            << "pair (" << chosen.first << ',' << chosen.second << ") beaten by (" << u << ','
            << v << ')';
      }
    }
    total += s;
    for (std::size_t q = 0; q < f.size(); ++q) {
      if (f.member(q).set.contains(chosen.first) != f.member(q).set.contains(chosen.second)) {
        ASSERT_LT(++kappa[q], 100U);
      }
    }
    used[chosen.first] = used[chosen.second] = 1;
  }
  EXPECT_EQ(kappa, m.kappa);
  unsigned __int128 recomputed = 0;
  for (std::uint32_t k : kappa) recomputed += (unsigned __int128)1 << k;
  EXPECT_TRUE(recomputed == total);
  const long double log_total = std::log2(static_cast<long double>(total));
  EXPECT_LE(static_cast<long double>(m.max_kappa()), log_total);
}

TEST(KeyMatching, ReplayMatchesSelectionRule) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const SetFamily f = rooted_triangles(random_geometric_complete(33, seed));
    const LowStabMatching m = key_matching(f, MatchConfig{});
    replay(f, m);
  }
  const SetFamily f = rooted_triangles(random_geometric_complete(65, 4));
  replay(f, key_matching(f, MatchConfig{}));
}

TEST(KeyMatching, Deterministic) {
  const SetFamily f = rooted_triangles(random_geometric_complete(41, 17));
  const LowStabMatching a = key_matching(f, MatchConfig{});
  const LowStabMatching b = key_matching(f, MatchConfig{});
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(a.leftover, b.leftover);
  EXPECT_EQ(a.kappa, b.kappa);
}

TEST(KeyMatching, PairsAndLeftoverPartitionGround) {
  Rng rng(77);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 32 + uniform_below(rng, 40);
    const SetFamily f = testing::random_family(rng, n, 30, 1, 3);
    LowStabMatching m;
    try {
      m = key_matching(f, MatchConfig{});
    } catch (const InfeasiblePartitionError&) {
      continue;  // random families can be too spread for the default c2
    }
    std::vector<Vertex> all = m.leftover;
    for (const VertexPair& p : m.pairs) {
      all.push_back(p.first);
      all.push_back(p.second);
    }
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), n);
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(all[k], k + 1);
    // Property 2 from first principles: same-part pairs are within 2 delta0.
    for (const VertexPair& p : m.pairs) {
      EXPECT_LE(static_cast<long double>(brute_unweighted(f, p.first, p.second)), 2 * m.delta0);
    }
  }
}

TEST(VerifyMatching, DetectsLongPair) {
  const SetFamily f = rooted_triangles(random_geometric_complete(33, 5));
  LowStabMatching m = key_matching(f, MatchConfig{});
  // Re-pair everything so one pair spans the whole index range.
  m.pairs.clear();
  m.leftover.clear();
  m.pairs.push_back({1, 32});
  std::vector<Vertex> rest;
  for (Vertex v = 2; v < 32; ++v) rest.push_back(v);
  for (std::size_t k = 0; k + 1 < rest.size(); k += 2) m.pairs.push_back({rest[k], rest[k + 1]});
  const MatchingReport r = verify_matching(f, m, MatchConfig{});
  ASSERT_NE(r.find("property1_span"), nullptr);
  EXPECT_FALSE(r.find("property1_span")->passed);
  EXPECT_FALSE(r.all_passed());
}

TEST(VerifyMatching, DetectsWrongKappa) {
  const SetFamily f = rooted_triangles(random_geometric_complete(33, 6));
  LowStabMatching m = key_matching(f, MatchConfig{});
  ASSERT_TRUE(verify_matching(f, m, MatchConfig{}).all_passed());
  m.kappa[0] += 1;
  const MatchingReport r = verify_matching(f, m, MatchConfig{});
  EXPECT_FALSE(r.find("kappa_consistency")->passed);
}

TEST(VerifyMatching, DetectsOverlap) {
  const SetFamily f = rooted_triangles(random_geometric_complete(33, 7));
  LowStabMatching m = key_matching(f, MatchConfig{});
  m.pairs.push_back(m.pairs.front());
  EXPECT_FALSE(verify_matching(f, m, MatchConfig{}).find("partition")->passed);
}

}  // namespace
}  // namespace shortedge
