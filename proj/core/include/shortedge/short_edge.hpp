#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shortedge/drawing.hpp"
#include "shortedge/packing_matcher.hpp"
#include "shortedge/set_system.hpp"

namespace shortedge {

// Digraph on the pairs of a matching: arc p -> q when the triangle set of
// p stabs q.
struct Gamma1 {
  std::vector<VertexPair> nodes;
  std::vector<std::vector<std::uint32_t>> out;  // node -> targets, increasing
  std::vector<std::uint32_t> in_degree;

  std::uint64_t arc_count() const noexcept;
  bool has_arc(std::size_t from, std::size_t to) const;
};

Gamma1 build_gamma1(const SetFamily& triangles, const LowStabMatching& m1);

// Nodes with in-degree < n^{3/4}, in node order. Throws EmptyM2Error when
// nothing is left.
std::vector<VertexPair> filter_m2(const Gamma1& gamma, std::size_t n);

// Number of pairs of `m2` with both endpoints inside G[v_0, v_i, v_j].
std::uint64_t phi(const Drawing& drawing, const RotationLabeling& labels,
                  std::span<const VertexPair> m2, Vertex i, Vertex j);

// Edges crossing v_x v_y, each in the first class it qualifies for:
// 0 incident to v_0, 1 endpoint in the leftover set X, 2 endpoint strictly
// between x and y, 3 its triangle set stabs {v_x, v_y}, 4 the rest.
struct CrossingClasses {
  std::array<std::vector<std::size_t>, 5> edges;  // edge indices, increasing

  std::array<std::size_t, 5> sizes() const noexcept;
  std::size_t total() const noexcept;
};

CrossingClasses classify_crossings(const Drawing& drawing, const RotationLabeling& labels,
                                   Vertex x, Vertex y, std::span<const Vertex> leftover,
                                   const SetFamily& triangles, const CrossingMatrix& crossings);

// Labels outside [x, y]: U1 when v_0 v_k crosses v_x v_y, U2 otherwise.
struct USplit {
  std::vector<Vertex> u1;
  std::vector<Vertex> u2;
};

USplit u1_u2_split(const Drawing& drawing, const RotationLabeling& labels, Vertex x, Vertex y,
                   const CrossingMatrix& crossings);

// Every edge of `e4` has one endpoint in U1 and the other in U2.
bool verify_observation1(const Drawing& drawing, const RotationLabeling& labels,
                         std::span<const std::size_t> e4, const USplit& split);

struct PipelineConfig {
  MatchConfig match;
  double c4 = 1.0;
  // Outer-face vertex id; required for drawings with curved edges.
  std::optional<std::int64_t> hint;
  // Threads used for phi evaluation.
  unsigned jobs = 1;
};

struct PipelineReport {
  std::size_t n = 0;  // labeled vertices; the drawing has n + 1
  std::int64_t root_id = 0;
  Point escape_direction;
  std::vector<std::int64_t> label_ids;  // label -> vertex id; [0] is the root

  VertexPair chosen;  // labels; zero when no labeling exists
  std::pair<std::int64_t, std::int64_t> chosen_ids;
  std::uint64_t crossing_count = 0;

  std::vector<VertexPair> m1_pairs;
  std::vector<Vertex> leftover;
  std::size_t m1_size = 0;
  std::size_t leftover_size = 0;
  std::uint64_t gamma1_arcs = 0;
  std::uint32_t max_kappa = 0;
  std::vector<std::pair<VertexPair, std::uint64_t>> phi;  // over M2, in M2 order
  std::array<std::size_t, 5> e_sizes{};
  std::array<std::size_t, 2> u_sizes{};
  bool observation1 = false;
  MatchingReport matching_report;
  std::vector<BoundCheck> diagnostics;

  long double bound = 0;  // c4 n^{7/4}
  bool passed = false;
  bool fallback = false;
  std::string fallback_reason;
  double runtime_ms = 0;

  std::size_t m2_size() const noexcept { return phi.size(); }
};

// Full short-edge selection. Falls back to the brute-force minimum edge
// (flagged) when n < min_n or M2 is empty; other failures are rethrown as
// StageError naming the stage.
PipelineReport select_short_edge(const Drawing& drawing, const PipelineConfig& config);

}  // namespace shortedge
