#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shortedge/set_system.hpp"

namespace shortedge {

// Partition of the ground set in which every same-part pair is stabbed by
// at most 2 * delta weight.
struct StabPartition {
  std::vector<std::vector<Vertex>> parts;
  long double delta = 0;
};

struct MatchConfig {
  unsigned d = 2;
  double c2 = 1.0;
  double c3 = 2.0;
  // Below this ground size the pipeline uses the brute-force oracle.
  std::size_t min_n = 32;
  std::uint64_t seed = 0;

  // Throws RangeError unless d >= 2, c2 >= 1 and c3 >= 2 * c2.
  void validate() const;
};

struct VertexPair {
  Vertex first = 0;
  Vertex second = 0;

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

// One iteration of the reweighting loop.
struct MatchStep {
  VertexPair pair;
  StabDistance weighted_stab;       // weight of members stabbing `pair` before the update
  StabDistance weight_before;       // W_i
  long double step_bound = 0;       // 2 c2 W_i / (n - 2i)^{1/d}
  bool within_step_bound = false;
};

struct LowStabMatching {
  std::size_t n = 0;
  std::vector<VertexPair> pairs;
  std::vector<Vertex> leftover;
  // Final stab counts, aligned with the family's member order.
  std::vector<MemberKey> kappa_keys;
  std::vector<std::uint32_t> kappa;
  MatchConfig config;

  long double delta0 = 0;
  std::uint64_t span_limit = 0;
  std::uint64_t target_pairs = 0;
  std::size_t refined_parts = 0;
  std::vector<MatchStep> trace;

  std::uint32_t max_kappa() const;
};

struct BoundCheck {
  std::string name;
  long double bound = 0;
  long double achieved = 0;
  bool passed = false;
};

struct MatchingReport {
  std::vector<BoundCheck> checks;

  bool all_passed() const;
  // nullptr when absent.
  const BoundCheck* find(const std::string& name) const;
};

// Maximal set N, built in index order, whose pairs are each stabbed by
// weight > delta. Every vertex outside N is within delta of some member.
std::vector<Vertex> greedy_net(const SetFamily& family, long double delta);

// Each vertex joins the first net vertex within stab distance delta.
StabPartition partition_low_stab(const SetFamily& family, long double delta);

// Largest part of partition_low_stab; ties go to the part with the lowest
// minimum index.
std::vector<Vertex> pigeon_subset(const SetFamily& family, long double delta);

// Splits every part into index-contiguous chunks of span <= width.
StabPartition refine_by_index(const StabPartition& partition, long double width);

// Low-stabbing matching by iterative reweighting over an index-local
// low-stabbing partition. Input must be unweighted.
LowStabMatching key_matching(const SetFamily& family, const MatchConfig& config);

// Recomputes every matching guarantee from scratch.
MatchingReport verify_matching(const SetFamily& family, const LowStabMatching& matching,
                               const MatchConfig& config);

}  // namespace shortedge
