#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shortedge/drawing.hpp"
#include "shortedge/packing_matcher.hpp"
#include "shortedge/set_system.hpp"

// Brute-force recomputation of every derived quantity, written directly
// from the definitions. Only orient() and on_segment() are shared with the
// main code; everything else here is independent so the two can be checked
// against each other.
namespace shortedge::oracle {

inline constexpr std::size_t kStabGuard = 200;
inline constexpr std::size_t kPhiGuard = 64;

// Number of other edges each edge crosses, aligned with drawing.edges().
std::vector<std::uint64_t> per_edge_crossings(const Drawing& drawing);

struct MinCrossingEdge {
  std::size_t edge = 0;
  std::pair<std::int64_t, std::int64_t> ids;  // smaller id first
  std::uint64_t count = 0;
};

// Minimum over all edges; ties go to the lexicographically smallest id pair.
MinCrossingEdge brute_min_crossing_edge(const Drawing& drawing);

// Weighted stab count of every pair u < v, row-major over
// (1,2), (1,3), ..., (n-1,n). Throws GuardError when n > kStabGuard.
std::vector<long double> brute_stab_counts(const SetFamily& family);

inline std::size_t pair_slot(std::size_t n, Vertex u, Vertex v) {
  // Position of (u, v), u < v, in the row-major upper triangle.
  return (u - 1) * (2 * n - u) / 2 + (v - u - 1);
}

// For every member, how many of `pairs` it stabs.
std::vector<std::uint32_t> brute_kappa(const SetFamily& family, std::span<const VertexPair> pairs);

// Vertices strictly inside the curve v_0 -> v_i -> v_j -> v_0 by winding
// number, for every i < j (order (1,2), (1,3), ...).
std::vector<std::vector<Vertex>> brute_triangle_sets(const Drawing& drawing,
                                                     const RotationLabeling& labels);

// phi for each pair of `m2` as the candidate. Throws GuardError when
// n > kPhiGuard.
std::vector<std::uint64_t> brute_phi(const Drawing& drawing, const RotationLabeling& labels,
                                     std::span<const VertexPair> m2);

// Arcs (p, q) between positions of `pairs` with T_p stabbing q, sorted.
std::vector<std::pair<std::size_t, std::size_t>> brute_gamma1_arcs(
    const Drawing& drawing, const RotationLabeling& labels, std::span<const VertexPair> pairs);

// Edge indices crossing v_x v_y split into the five first-match classes.
std::array<std::vector<std::size_t>, 5> brute_classification(const Drawing& drawing,
                                                             const RotationLabeling& labels,
                                                             Vertex x, Vertex y,
                                                             std::span<const Vertex> leftover);

// Number of distinct membership signatures of the ground set.
std::size_t brute_venn_cells(const SetFamily& family, std::span<const MemberKey> keys);

// Maximum of brute_venn_cells over every m-subfamily. Throws GuardError
// when there are more than `limit` subfamilies.
std::uint64_t brute_max_cells(const SetFamily& family, std::size_t m,
                              std::uint64_t limit = 2'000'000);

struct OracleReport {
  MinCrossingEdge min_crossing_edge;
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::uint64_t>> per_edge_crossings;
  // Triangle family stab counts, present when n <= kStabGuard.
  std::optional<std::vector<long double>> stab_table;
  // Max Venn cells for m = 1, 2, ... while within the enumeration limit.
  std::vector<std::pair<std::size_t, std::uint64_t>> cell_counts;
  // phi over the supplied pairs, present when pairs are given and
  // n <= kPhiGuard.
  std::optional<std::vector<std::pair<VertexPair, std::uint64_t>>> phi_table;
};

OracleReport build_report(const Drawing& drawing, std::optional<std::int64_t> hint = {},
                          std::span<const VertexPair> m2 = {}, std::size_t max_cells_m = 3);

}  // namespace shortedge::oracle
