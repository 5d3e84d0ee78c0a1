#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shortedge/vertex_set.hpp"

namespace shortedge {

// Identity of a family member; for triangle families this is the index
// pair (i, j) with i < j.
struct MemberKey {
  std::uint32_t first = 0;
  std::uint32_t second = 0;

  friend bool operator==(const MemberKey&, const MemberKey&) = default;
  friend auto operator<=>(const MemberKey&, const MemberKey&) = default;
};

// A weighted member A with multiplicity 2^log_weight.
struct Member {
  MemberKey key;
  VertexSet set;
  std::uint32_t log_weight = 0;
};

// Non-negative weighted count held as scaled * 2^exponent. Sums align on
// the largest exponent before adding, so counts of unit weights stay exact
// and weights of the form 2^k never overflow.
class StabDistance {
 public:
  StabDistance() = default;

  static StabDistance from_count(std::uint64_t count);
  static StabDistance power_of_two(std::int64_t exponent);
  // sum_l counts[l] * 2^l
  static StabDistance from_level_counts(std::span<const std::uint64_t> counts);

  long double scaled() const noexcept { return scaled_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return scaled_ == 0; }

  // Plain value; +inf if it does not fit a long double.
  long double value() const noexcept;
  // log2 of the value; -inf for zero.
  long double log2() const noexcept;

  StabDistance operator+(const StabDistance& other) const noexcept;
  StabDistance& operator+=(const StabDistance& other) noexcept { return *this = *this + other; }

  friend std::partial_ordering operator<=>(const StabDistance& a, const StabDistance& b) noexcept;
  friend bool operator==(const StabDistance& a, const StabDistance& b) noexcept {
    return (a <=> b) == 0;
  }
  friend std::partial_ordering operator<=>(const StabDistance& a, long double b) noexcept;
  friend bool operator==(const StabDistance& a, long double b) noexcept { return (a <=> b) == 0; }

 private:
  StabDistance(long double scaled, std::int64_t exponent) : scaled_(scaled), exponent_(exponent) {}
  void normalize() noexcept;

  long double scaled_ = 0;
  std::int64_t exponent_ = 0;
};

// Members of a family grouped by weight: bit q of `members` is set when
// member q has this log weight.
struct WeightLevel {
  std::uint32_t log_weight = 0;
  Bitset members;
};

// Weighted multiset of subsets of the ground set {v_1, ..., v_n}. Immutable
// after construction. Besides the member list it keeps the transposed
// incidence (for each vertex, the members containing it), which turns stab
// counts into popcounts.
class SetFamily {
 public:
  SetFamily() = default;
  // Throws RangeError if a member's ground size differs from n, KeyError on
  // duplicate keys.
  SetFamily(std::size_t n, std::vector<Member> members);

  // Unweighted family with keys (0, 1), (0, 2), ... in input order.
  static SetFamily from_sets(std::size_t n, const std::vector<std::vector<Vertex>>& sets);

  std::size_t ground_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::span<const Member> members() const noexcept { return members_; }
  const Member& member(std::size_t index) const { return members_.at(index); }

  std::optional<std::size_t> find(MemberKey key) const;
  // Throws KeyError for unknown keys.
  std::size_t index_of(MemberKey key) const;

  bool unweighted() const noexcept;
  StabDistance total_weight() const;

  const Bitset& incidence(Vertex v) const { return incidence_.at(v - 1); }
  std::span<const WeightLevel> levels() const noexcept { return levels_; }

  // Same members with new log weights (one per member, in member order).
  SetFamily reweighted(std::span<const std::uint32_t> log_weights) const;

 private:
  void build_index();

  std::size_t n_ = 0;
  std::vector<Member> members_;
  std::vector<Bitset> incidence_;
  std::vector<WeightLevel> levels_;
  std::vector<std::pair<MemberKey, std::size_t>> key_index_;
};

// A stabs {u, v} iff it contains exactly one of them.
bool stabs(const VertexSet& a, Vertex u, Vertex v);

// Total weight of the members stabbing {u, v}.
StabDistance stab_count(const SetFamily& family, Vertex u, Vertex v);

// Unweighted number of members stabbing {u, v}, ignoring log weights.
std::size_t unweighted_stab_count(const SetFamily& family, Vertex u, Vertex v);

// Number of distinct membership signatures of ground vertices with respect
// to the chosen members (nonempty cells of their Venn diagram).
std::size_t venn_cells(const SetFamily& family, std::span<const MemberKey> keys);

struct ShatterEstimate {
  std::uint64_t max_cells = 0;
  // false when the value is the maximum over sampled subfamilies only, a
  // lower bound on the dual shatter function.
  bool exhaustive = false;
  std::uint64_t subfamilies_examined = 0;
  std::vector<MemberKey> witness;
};

// Maximum Venn cell count over m-member subfamilies: exact when
// C(|F|, m) <= budget, otherwise over `budget` seeded random subfamilies.
ShatterEstimate dual_shatter_estimate(const SetFamily& family, std::size_t m,
                                      std::uint64_t budget, std::uint64_t seed);

// sum_{i=0}^{d*} C(m, i)
std::uint64_t sauer_shelah_bound(std::uint64_t d_star, std::uint64_t m);

// Every distinct pair of `xs` has stab_count >= delta.
bool is_delta_separated(const SetFamily& family, std::span<const Vertex> xs, long double delta);

}  // namespace shortedge
