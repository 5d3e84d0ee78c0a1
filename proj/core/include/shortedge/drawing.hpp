#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shortedge/geometry.hpp"
#include "shortedge/set_system.hpp"
#include "shortedge/vertex_set.hpp"

namespace shortedge {

struct DrawingVertex {
  std::int64_t id = 0;
  Point pos;
};

// Edge as supplied by a caller or a file; the polyline may run in either
// direction. An empty polyline means the straight segment.
struct EdgeSpec {
  std::int64_t u = 0;
  std::int64_t v = 0;
  Polyline path;
};

// Stored edge between vertex indices a < b. The path runs from a to b when
// its endpoints match the vertex positions.
struct DrawingEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  Polyline path;
};

// Polyline drawing of a graph on integer points. Construction checks only
// structure (known ids, no duplicate edges, coordinates in range);
// completeness and simplicity are reported by validate_simple.
class Drawing {
 public:
  Drawing() = default;
  Drawing(std::vector<DrawingVertex> vertices, std::vector<EdgeSpec> edges);

  // Complete graph with straight-segment edges.
  static Drawing straight_line(std::vector<DrawingVertex> vertices);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const DrawingVertex> vertices() const noexcept { return vertices_; }
  std::span<const DrawingEdge> edges() const noexcept { return edges_; }
  const DrawingVertex& vertex(std::size_t index) const { return vertices_.at(index); }
  const DrawingEdge& edge(std::size_t index) const { return edges_.at(index); }
  Point position(std::size_t index) const { return vertices_.at(index).pos; }

  std::optional<std::size_t> vertex_index(std::int64_t id) const;
  std::optional<std::size_t> edge_index(std::size_t a, std::size_t b) const;
  // Throws PreconditionError when the edge is missing.
  std::size_t edge_between(std::size_t a, std::size_t b) const;

  // Path of the edge {a, b} oriented from a to b.
  Polyline path_from(std::size_t a, std::size_t b) const;

  // Every edge is a single segment.
  bool is_straight_line() const noexcept;

 private:
  std::vector<DrawingVertex> vertices_;
  std::vector<DrawingEdge> edges_;
  std::vector<std::int32_t> edge_lookup_;  // vertex_count^2, -1 when absent
};

enum class ViolationKind {
  kMissingEdge,
  kEndpointMismatch,
  kDuplicatePosition,
  kEdgeThroughVertex,
  kSelfIntersection,
  kDoubleIntersection,
  kAdjacentCrossing,
  kDegenerateContact,
};

std::string to_string(ViolationKind kind);

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

struct Violation {
  ViolationKind kind;
  std::size_t edge = kNoIndex;
  std::size_t other_edge = kNoIndex;
  std::size_t vertex = kNoIndex;
  std::string message;
};

// Empty iff the drawing is a complete simple topological graph whose
// polylines meet only in proper crossings of segment interiors or at shared
// endpoints. Contacts at polyline bends are reported as degenerate.
std::vector<Violation> validate_simple(const Drawing& drawing);

class CrossingMatrix {
 public:
  CrossingMatrix() = default;
  explicit CrossingMatrix(std::size_t edges);

  std::size_t edge_count() const noexcept { return rows_.size(); }
  bool crosses(std::size_t e, std::size_t f) const { return rows_.at(e).test(f); }
  std::size_t total(std::size_t e) const { return totals_.at(e); }
  std::span<const std::size_t> totals() const noexcept { return totals_; }
  // Number of unordered crossing edge pairs.
  std::uint64_t crossing_pairs() const noexcept;

  void mark(std::size_t e, std::size_t f);

 private:
  std::vector<Bitset> rows_;
  std::vector<std::size_t> totals_;
};

// Throws PreconditionError naming the first violation when the drawing is
// not valid.
CrossingMatrix crossing_matrix(const Drawing& drawing);

struct OuterVertex {
  std::size_t vertex = 0;
  // A ray from the vertex in this direction meets no edge.
  Point escape_direction;
};

// Candidate escape rays are the angular-gap directions between all polyline
// points seen from the vertex, widest gap first.
std::optional<Point> escape_ray(const Drawing& drawing, std::size_t vertex);

// Straight-line drawings: the convex hull vertex with the smallest id.
// Otherwise the hint, after an escape ray certifies it.
OuterVertex outer_face_vertex(const Drawing& drawing, std::optional<std::int64_t> hint = {});

// Counterclockwise order of the edges at the root v_0. Label k (1..n) is
// the vertex whose edge is k-th counterclockwise from `reference`.
struct RotationLabeling {
  std::size_t root = 0;
  Point reference{1, 0};
  std::vector<std::size_t> vertex_of;  // label -> vertex index; [0] is the root
  std::vector<Vertex> label_of;        // vertex index -> label; root -> 0

  std::size_t n() const noexcept { return vertex_of.empty() ? 0 : vertex_of.size() - 1; }
};

// Sorts neighbors by the direction of the first polyline segment leaving
// v0, counterclockwise from `reference` (positive x when omitted). Throws
// DegenerateRotationError on coincident directions.
RotationLabeling relabel_ccw(const Drawing& drawing, std::size_t v0,
                             std::optional<Point> reference = {});

// Closed curve v_0 -> v_i -> v_j -> v_0 as a polygon (last point joins the
// first).
std::vector<Point> triangle_curve(const Drawing& drawing, const RotationLabeling& labels,
                                  Vertex i, Vertex j);

// p lies in the bounded region of the 3-cycle G[v_0, v_i, v_j]. Throws
// BoundaryError when p is on the curve. `ray_skip` picks a later valid
// parity ray.
bool point_in_triangle_region(const Drawing& drawing, const RotationLabeling& labels, Vertex i,
                              Vertex j, Point p, unsigned ray_skip = 0);

// T_{i,j} = labeled vertices inside G[v_0, v_i, v_j], one unweighted member
// per pair i < j keyed (i, j).
SetFamily triangle_family(const Drawing& drawing, const RotationLabeling& labels);

}  // namespace shortedge
