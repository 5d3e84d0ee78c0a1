#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "shortedge/errors.hpp"
#include "shortedge/set_system.hpp"
#include "shortedge/vertex_set.hpp"

namespace shortedge {
namespace {

TEST(VertexSet, Basics) {
  VertexSet s(70, {1, 64, 65, 70});
  EXPECT_EQ(s.size(), 4U);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(2));
  EXPECT_FALSE(s.contains(0));
  EXPECT_FALSE(s.contains(71));
  s.erase(64);
  s.insert(2);
  EXPECT_EQ(s.to_vector(), (std::vector<Vertex>{1, 2, 65, 70}));
  EXPECT_TRUE(VertexSet(5).empty());
}

TEST(VertexSet, XorCount) {
  const VertexSet a(130, {1, 2, 100, 130});
  const VertexSet b(130, {2, 3, 100});
  EXPECT_EQ(Bitset::xor_count(a.bits(), b.bits()), 3U);
  const VertexSet mask(130, {1, 3});
  EXPECT_EQ(Bitset::xor_count_masked(a.bits(), b.bits(), mask.bits()), 2U);
}

TEST(StabDistance, ExactArithmetic) {
  const StabDistance a = StabDistance::from_count(5);
  const StabDistance b = StabDistance::power_of_two(3);
  EXPECT_EQ((a + b).value(), 13.0L);
  EXPECT_EQ(StabDistance::power_of_two(0), 1.0L);
  EXPECT_TRUE(StabDistance().is_zero());
  EXPECT_LT(a, b);
  EXPECT_EQ(b.log2(), 3.0L);
  const std::uint64_t counts[] = {2, 0, 1};  // 2 * 2^0 + 1 * 2^2
  EXPECT_EQ(StabDistance::from_level_counts(counts).value(), 6.0L);
}

TEST(StabDistance, HugeExponentsStayComparable) {
  const StabDistance big = StabDistance::power_of_two(100000);
  const StabDistance bigger = big + StabDistance::power_of_two(99999);
  EXPECT_LT(big, bigger);
  EXPECT_NEAR(static_cast<double>(bigger.log2()), 100000.0 + std::log2(1.5), 1e-9);
  EXPECT_EQ(big + StabDistance(), big);
}

TEST(SetSystem, Stabs) {
  EXPECT_TRUE(stabs(VertexSet(4, {1}), 1, 2));
  EXPECT_FALSE(stabs(VertexSet(4, {1, 2}), 1, 2));
  EXPECT_TRUE(stabs(VertexSet(4, {1, 4}), 3, 4));
  EXPECT_FALSE(stabs(VertexSet(4), 3, 4));
}

TEST(SetSystem, StabCount) {
  const SetFamily f = SetFamily::from_sets(3, {{1}, {2}});
  EXPECT_EQ(stab_count(f, 1, 2), 2.0L);
  EXPECT_EQ(stab_count(f, 1, 3), 1.0L);
  const SetFamily weighted(3, {Member{{1, 2}, VertexSet(3, {1}), 3}});
  EXPECT_EQ(stab_count(weighted, 1, 2), 8.0L);
  EXPECT_EQ(unweighted_stab_count(weighted, 1, 2), 1U);
  EXPECT_FALSE(weighted.unweighted());
  EXPECT_EQ(weighted.total_weight(), 8.0L);
}

TEST(SetSystem, RejectsBadPairs) {
  const SetFamily f = SetFamily::from_sets(3, {{1}});
  EXPECT_THROW(stab_count(f, 1, 1), InvalidPairError);
  EXPECT_THROW(stab_count(f, 0, 2), RangeError);
  EXPECT_THROW(stab_count(f, 1, 4), RangeError);
}

TEST(SetSystem, KeysAreLookedUp) {
  const SetFamily f = SetFamily::from_sets(4, {{1}, {2}, {3}});
  ASSERT_EQ(f.size(), 3U);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(f.index_of(f.member(k).key), k);
  EXPECT_FALSE(f.find({99, 100}).has_value());
  EXPECT_THROW(f.index_of({99, 100}), KeyError);
}

TEST(SetSystem, VennCells) {
  const SetFamily two = SetFamily::from_sets(3, {{1}, {2}});
  const std::vector<MemberKey> both{two.member(0).key, two.member(1).key};
  EXPECT_EQ(venn_cells(two, both), 3U);

  const SetFamily empty = SetFamily::from_sets(3, {{}});
  const std::vector<MemberKey> one{empty.member(0).key};
  EXPECT_EQ(venn_cells(empty, one), 1U);

  const SetFamily copies = SetFamily::from_sets(4, {{1, 3}, {1, 3}});
  const std::vector<MemberKey> pair{copies.member(0).key, copies.member(1).key};
  EXPECT_EQ(venn_cells(copies, pair), 2U);
}

TEST(SetSystem, DualShatter) {
  const SetFamily two = SetFamily::from_sets(3, {{1}, {2}});
  const ShatterEstimate e2 = dual_shatter_estimate(two, 2, 1000, 0);
  EXPECT_EQ(e2.max_cells, 3U);
  EXPECT_TRUE(e2.exhaustive);
  EXPECT_EQ(e2.subfamilies_examined, 1U);
  EXPECT_EQ(dual_shatter_estimate(two, 1, 1000, 0).max_cells, 2U);
}

TEST(SetSystem, DualShatterSampledIsALowerBound) {
  Rng rng(5);
  const SetFamily f = testing::random_family(rng, 12, 15);
  const std::uint64_t exact = dual_shatter_estimate(f, 3, 1'000'000, 0).max_cells;
  const ShatterEstimate sampled = dual_shatter_estimate(f, 3, 50, 9);
  EXPECT_FALSE(sampled.exhaustive);
  EXPECT_EQ(sampled.subfamilies_examined, 50U);
  EXPECT_LE(sampled.max_cells, exact);
  EXPECT_EQ(dual_shatter_estimate(f, 3, 50, 9).max_cells, sampled.max_cells);
  std::vector<MemberKey> witness = sampled.witness;
  EXPECT_EQ(venn_cells(f, witness), sampled.max_cells);
}

TEST(SetSystem, SauerShelah) {
  EXPECT_EQ(sauer_shelah_bound(0, 5), 1U);
  EXPECT_EQ(sauer_shelah_bound(2, 4), 11U);
  EXPECT_EQ(sauer_shelah_bound(3, 3), 8U);
  for (std::uint64_t m = 0; m < 10; ++m) {
    for (std::uint64_t d = m; d < m + 3; ++d) EXPECT_EQ(sauer_shelah_bound(d, m), 1ULL << m);
  }
}

TEST(SetSystem, DeltaSeparated) {
  const SetFamily f = SetFamily::from_sets(2, {{1}});
  const std::vector<Vertex> xs{1, 2};
  EXPECT_TRUE(is_delta_separated(f, xs, 1));
  EXPECT_FALSE(is_delta_separated(f, xs, 2));
  EXPECT_TRUE(is_delta_separated(f, xs, 0));
  const std::vector<Vertex> single{1};
  EXPECT_TRUE(is_delta_separated(f, single, 100));
  EXPECT_TRUE(is_delta_separated(f, {}, 100));
}

TEST(SetSystem, ReweightedSharesSets) {
  const SetFamily f = SetFamily::from_sets(3, {{1}, {1, 2}});
  const std::uint32_t w[] = {2, 0};
  const SetFamily g = f.reweighted(w);
  EXPECT_EQ(stab_count(g, 1, 3), 5.0L);  // 4 + 1
  EXPECT_EQ(stab_count(g, 2, 3), 1.0L);
  EXPECT_EQ(g.total_weight(), 5.0L);
}

}  // namespace
}  // namespace shortedge
