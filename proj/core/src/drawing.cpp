#include "shortedge/drawing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "shortedge/errors.hpp"

namespace shortedge {

// ---------------------------------------------------------------------------
// Drawing

Drawing::Drawing(std::vector<DrawingVertex> vertices, std::vector<EdgeSpec> edges)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  {
    std::unordered_set<std::int64_t> ids;
    for (const DrawingVertex& v : vertices_) {
      if (!ids.insert(v.id).second) throw ParseError("duplicate vertex id " + std::to_string(v.id));
      if (!in_coordinate_range(v.pos)) {
        throw ParseError("vertex " + std::to_string(v.id) + " has coordinates outside +-2^30");
      }
    }
  }
  edge_lookup_.assign(n * n, -1);
  edges_.reserve(edges.size());
  for (EdgeSpec& spec : edges) {
    const auto iu = vertex_index(spec.u);
    const auto iv = vertex_index(spec.v);
    if (!iu || !iv) {
      throw ParseError("edge {" + std::to_string(spec.u) + ", " + std::to_string(spec.v) +
                       "} references an unknown vertex");
    }
    if (*iu == *iv) throw ParseError("loop edge at vertex " + std::to_string(spec.u));
    const std::size_t a = std::min(*iu, *iv);
    const std::size_t b = std::max(*iu, *iv);
    if (edge_lookup_[a * n + b] >= 0) {
      throw ParseError("duplicate edge {" + std::to_string(spec.u) + ", " + std::to_string(spec.v) +
                       "}");
    }
    Polyline path = std::move(spec.path);
    if (path.empty()) path = {vertices_[a].pos, vertices_[b].pos};
    if (path.size() < 2) {
      throw ParseError("edge {" + std::to_string(spec.u) + ", " + std::to_string(spec.v) +
                       "} polyline needs at least two points");
    }
    for (const Point& p : path) {
      if (!in_coordinate_range(p)) {
        throw ParseError("edge {" + std::to_string(spec.u) + ", " + std::to_string(spec.v) +
                         "} has coordinates outside +-2^30");
      }
    }
    if (!(path.front() == vertices_[a].pos && path.back() == vertices_[b].pos) &&
        path.front() == vertices_[b].pos && path.back() == vertices_[a].pos) {
      std::reverse(path.begin(), path.end());
    }
    edge_lookup_[a * n + b] = edge_lookup_[b * n + a] = static_cast<std::int32_t>(edges_.size());
    edges_.push_back({a, b, std::move(path)});
  }
}

Drawing Drawing::straight_line(std::vector<DrawingVertex> vertices) {
  std::vector<EdgeSpec> edges;
  const std::size_t n = vertices.size();
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) edges.push_back({vertices[a].id, vertices[b].id, {}});
  }
  return Drawing(std::move(vertices), std::move(edges));
}

std::optional<std::size_t> Drawing::vertex_index(std::int64_t id) const {
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    if (vertices_[k].id == id) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> Drawing::edge_index(std::size_t a, std::size_t b) const {
  const std::size_t n = vertices_.size();
  if (a >= n || b >= n) return std::nullopt;
  const std::int32_t e = edge_lookup_[a * n + b];
  if (e < 0) return std::nullopt;
  return static_cast<std::size_t>(e);
}

std::size_t Drawing::edge_between(std::size_t a, std::size_t b) const {
  if (auto e = edge_index(a, b)) return *e;
  throw PreconditionError("no edge between vertex indices " + std::to_string(a) + " and " +
                          std::to_string(b));
}

Polyline Drawing::path_from(std::size_t a, std::size_t b) const {
  const DrawingEdge& e = edges_[edge_between(a, b)];
  Polyline path = e.path;
  if (e.a != a) std::reverse(path.begin(), path.end());
  return path;
}

bool Drawing::is_straight_line() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const DrawingEdge& e) { return e.path.size() == 2; });
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMissingEdge: return "missing edge";
    case ViolationKind::kEndpointMismatch: return "endpoint mismatch";
    case ViolationKind::kDuplicatePosition: return "duplicate position";
    case ViolationKind::kEdgeThroughVertex: return "edge through vertex";
    case ViolationKind::kSelfIntersection: return "self intersection";
    case ViolationKind::kDoubleIntersection: return "double intersection";
    case ViolationKind::kAdjacentCrossing: return "adjacent crossing";
    case ViolationKind::kDegenerateContact: return "degenerate contact";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// CrossingMatrix

CrossingMatrix::CrossingMatrix(std::size_t edges) : rows_(edges, Bitset(edges)), totals_(edges, 0) {}

void CrossingMatrix::mark(std::size_t e, std::size_t f) {
  if (rows_[e].test(f)) return;
  rows_[e].set(f);
  rows_[f].set(e);
  ++totals_[e];
  ++totals_[f];
}

std::uint64_t CrossingMatrix::crossing_pairs() const noexcept {
  std::uint64_t sum = 0;
  for (std::size_t t : totals_) sum += t;
  return sum / 2;
}

// ---------------------------------------------------------------------------
// Validation and crossing scan

namespace {

constexpr std::size_t kViolationCap = 10000;

struct Box {
  std::int64_t min_x, max_x, min_y, max_y;
};

Box box_of(const Polyline& path) {
  Box b{path[0].x, path[0].x, path[0].y, path[0].y};
  for (const Point& p : path) {
    b.min_x = std::min(b.min_x, p.x);
    b.max_x = std::max(b.max_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

bool boxes_meet(const Box& a, const Box& b) {
  return a.min_x <= b.max_x && b.min_x <= a.max_x && a.min_y <= b.max_y && b.min_y <= a.max_y;
}

std::string edge_name(const Drawing& d, std::size_t e) {
  const DrawingEdge& edge = d.edge(e);
  return "{" + std::to_string(d.vertex(edge.a).id) + ", " + std::to_string(d.vertex(edge.b).id) +
         "}";
}

class Scanner {
 public:
  explicit Scanner(const Drawing& d) : d_(d) {}

  std::vector<Violation> violations;

  void add(Violation v) {
    if (violations.size() < kViolationCap) violations.push_back(std::move(v));
  }
  bool full() const { return violations.size() >= kViolationCap; }

  bool structural() {
    const std::size_t n = d_.vertex_count();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return d_.position(a) < d_.position(b); });
    for (std::size_t k = 1; k < n; ++k) {
      if (d_.position(order[k]) == d_.position(order[k - 1])) {
        add({ViolationKind::kDuplicatePosition, kNoIndex, kNoIndex, order[k],
             "vertices " + std::to_string(d_.vertex(order[k - 1]).id) + " and " +
                 std::to_string(d_.vertex(order[k]).id) + " share a position"});
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!d_.edge_index(a, b)) {
          add({ViolationKind::kMissingEdge, kNoIndex, kNoIndex, a,
               "no edge between " + std::to_string(d_.vertex(a).id) + " and " +
                   std::to_string(d_.vertex(b).id)});
        }
      }
    }
    for (std::size_t e = 0; e < d_.edge_count(); ++e) {
      const DrawingEdge& edge = d_.edge(e);
      if (edge.path.front() != d_.position(edge.a) || edge.path.back() != d_.position(edge.b)) {
        add({ViolationKind::kEndpointMismatch, e, kNoIndex, kNoIndex,
             "edge " + edge_name(d_, e) + " polyline does not start and end at its vertices"});
      }
    }
    return violations.empty();
  }

  void per_edge() {
    const std::size_t n = d_.vertex_count();
    for (std::size_t e = 0; e < d_.edge_count() && !full(); ++e) {
      const DrawingEdge& edge = d_.edge(e);
      const Polyline& path = edge.path;
      const std::size_t segs = path.size() - 1;
      for (std::size_t s = 0; s < segs; ++s) {
        if (path[s] == path[s + 1]) {
          add({ViolationKind::kSelfIntersection, e, kNoIndex, kNoIndex,
               "edge " + edge_name(d_, e) + " has a zero-length segment"});
        }
      }
      for (std::size_t s = 0; s + 1 < segs; ++s) {
        const Point u = path[s + 1] - path[s];
        const Point w = path[s + 2] - path[s + 1];
        if (cross(u, w) == 0 && dot(u, w) < 0) {
          add({ViolationKind::kSelfIntersection, e, kNoIndex, kNoIndex,
               "edge " + edge_name(d_, e) + " doubles back on itself"});
        }
      }
      for (std::size_t s = 0; s < segs; ++s) {
        for (std::size_t t = s + 2; t < segs; ++t) {
          if (classify_segments(path[s], path[s + 1], path[t], path[t + 1]) !=
              SegmentContact::kNone) {
            add({ViolationKind::kSelfIntersection, e, kNoIndex, kNoIndex,
                 "edge " + edge_name(d_, e) + " intersects itself"});
          }
        }
      }
      const Box box = box_of(path);
      for (std::size_t v = 0; v < n; ++v) {
        if (v == edge.a || v == edge.b) continue;
        const Point p = d_.position(v);
        if (p.x < box.min_x || p.x > box.max_x || p.y < box.min_y || p.y > box.max_y) continue;
        for (std::size_t s = 0; s < segs; ++s) {
          if (on_segment(path[s], path[s + 1], p)) {
            add({ViolationKind::kEdgeThroughVertex, e, kNoIndex, v,
                 "edge " + edge_name(d_, e) + " passes through vertex " +
                     std::to_string(d_.vertex(v).id)});
            break;
          }
        }
      }
    }
  }

  void pairs(CrossingMatrix* matrix) {
    const std::size_t m = d_.edge_count();
    std::vector<Box> boxes(m);
    for (std::size_t e = 0; e < m; ++e) boxes[e] = box_of(d_.edge(e).path);

    for (std::size_t e = 0; e < m && !full(); ++e) {
      const DrawingEdge& ee = d_.edge(e);
      for (std::size_t f = e + 1; f < m; ++f) {
        if (!boxes_meet(boxes[e], boxes[f])) continue;
        const DrawingEdge& ff = d_.edge(f);
        std::size_t shared = kNoIndex;
        if (ee.a == ff.a || ee.a == ff.b) shared = ee.a;
        if (ee.b == ff.a || ee.b == ff.b) shared = ee.b;
        if (shared == kNoIndex) {
          independent(e, f, matrix);
        } else {
          adjacent(e, f, shared);
        }
      }
    }
  }

 private:
  void independent(std::size_t e, std::size_t f, CrossingMatrix* matrix) {
    const Polyline& pe = d_.edge(e).path;
    const Polyline& pf = d_.edge(f).path;
    std::size_t proper = 0;
    bool touched = false;
    for (std::size_t s = 0; s + 1 < pe.size(); ++s) {
      for (std::size_t t = 0; t + 1 < pf.size(); ++t) {
        const SegmentContact c = classify_segments(pe[s], pe[s + 1], pf[t], pf[t + 1]);
        if (c == SegmentContact::kProper) ++proper;
        if (c == SegmentContact::kTouch) touched = true;
      }
    }
    if (touched) {
      add({ViolationKind::kDegenerateContact, e, f, kNoIndex,
           "edges " + edge_name(d_, e) + " and " + edge_name(d_, f) +
               " touch without a proper crossing"});
    }
    if (proper > 1) {
      add({ViolationKind::kDoubleIntersection, e, f, kNoIndex,
           "edges " + edge_name(d_, e) + " and " + edge_name(d_, f) + " cross " +
               std::to_string(proper) + " times"});
    }
    if (proper >= 1 && matrix != nullptr) matrix->mark(e, f);
  }

  void adjacent(std::size_t e, std::size_t f, std::size_t shared) {
    const DrawingEdge& ee = d_.edge(e);
    const DrawingEdge& ff = d_.edge(f);
    const Polyline& pe = ee.path;
    const Polyline& pf = ff.path;
    const std::size_t inc_e = shared == ee.a ? 0 : pe.size() - 2;
    const std::size_t inc_f = shared == ff.a ? 0 : pf.size() - 2;
    const Point de = shared == ee.a ? pe[1] - pe[0] : pe[pe.size() - 2] - pe.back();
    const Point df = shared == ff.a ? pf[1] - pf[0] : pf[pf.size() - 2] - pf.back();
    for (std::size_t s = 0; s + 1 < pe.size(); ++s) {
      for (std::size_t t = 0; t + 1 < pf.size(); ++t) {
        const SegmentContact c = classify_segments(pe[s], pe[s + 1], pf[t], pf[t + 1]);
        if (c == SegmentContact::kNone) continue;
        if (c == SegmentContact::kProper) {
          add({ViolationKind::kAdjacentCrossing, e, f, shared,
               "adjacent edges " + edge_name(d_, e) + " and " + edge_name(d_, f) + " cross"});
          continue;
        }
        const bool at_shared = s == inc_e && t == inc_f;
        if (at_shared && !(cross(de, df) == 0 && dot(de, df) > 0)) continue;
        add({ViolationKind::kDegenerateContact, e, f, shared,
             "adjacent edges " + edge_name(d_, e) + " and " + edge_name(d_, f) +
                 " touch away from their common endpoint or overlap"});
      }
    }
  }

  const Drawing& d_;
};

}  // namespace

std::vector<Violation> validate_simple(const Drawing& drawing) {
  Scanner scanner(drawing);
  if (!scanner.structural()) return std::move(scanner.violations);
  scanner.per_edge();
  scanner.pairs(nullptr);
  return std::move(scanner.violations);
}

CrossingMatrix crossing_matrix(const Drawing& drawing) {
  Scanner scanner(drawing);
  CrossingMatrix matrix(drawing.edge_count());
  if (scanner.structural()) {
    scanner.per_edge();
    scanner.pairs(&matrix);
  }
  if (!scanner.violations.empty()) {
    const Violation& v = scanner.violations.front();
    throw PreconditionError("invalid drawing (" + std::to_string(scanner.violations.size()) +
                            " violations), first: " + to_string(v.kind) + ": " + v.message);
  }
  return matrix;
}

// ---------------------------------------------------------------------------
// Outer face and rotation

std::optional<Point> escape_ray(const Drawing& drawing, std::size_t vertex) {
  const Point origin = drawing.position(vertex);
  std::vector<Point> dirs;
  for (const DrawingEdge& e : drawing.edges()) {
    for (const Point& p : e.path) {
      if (p != origin) dirs.push_back(p - origin);
    }
  }
  if (dirs.empty()) return Point{1, 0};
  const Point ref{1, 0};
  std::sort(dirs.begin(), dirs.end(),
            [&](Point u, Point v) { return compare_angle(ref, u, v) < 0; });
  dirs.erase(std::unique(dirs.begin(), dirs.end(),
                         [&](Point u, Point v) { return compare_angle(ref, u, v) == 0; }),
             dirs.end());

  struct Gap {
    long double width;
    std::size_t index;
  };
  std::vector<Gap> gaps;
  const std::size_t k = dirs.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Point u = dirs[i];
    const Point w = dirs[(i + 1) % k];
    long double width = 2 * std::numbers::pi_v<long double>;
    if (k > 1) {
      width = std::atan2(static_cast<long double>(w.y), static_cast<long double>(w.x)) -
              std::atan2(static_cast<long double>(u.y), static_cast<long double>(u.x));
      if (width <= 0) width += 2 * std::numbers::pi_v<long double>;
    }
    gaps.push_back({width, i});
  }
  std::stable_sort(gaps.begin(), gaps.end(),
                   [](const Gap& a, const Gap& b) { return a.width > b.width; });

  for (const Gap& gap : gaps) {
    const Point dir = cone_interior_direction(dirs[gap.index], dirs[(gap.index + 1) % k]);
    bool blocked = false;
    for (const DrawingEdge& e : drawing.edges()) {
      for (std::size_t s = 0; s + 1 < e.path.size() && !blocked; ++s) {
        blocked = ray_hits_segment(origin, dir, e.path[s], e.path[s + 1]);
      }
      if (blocked) break;
    }
    if (!blocked) return dir;
  }
  return std::nullopt;
}

OuterVertex outer_face_vertex(const Drawing& drawing, std::optional<std::int64_t> hint) {
  if (drawing.vertex_count() == 0) throw NoOuterVertexError("empty drawing");
  std::size_t vertex = 0;
  if (drawing.is_straight_line()) {
    std::vector<Point> pts;
    pts.reserve(drawing.vertex_count());
    for (const DrawingVertex& v : drawing.vertices()) pts.push_back(v.pos);
    const std::vector<std::size_t> hull = convex_hull_indices(pts);
    vertex = *std::min_element(hull.begin(), hull.end(), [&](std::size_t a, std::size_t b) {
      return drawing.vertex(a).id < drawing.vertex(b).id;
    });
  } else {
    if (!hint) throw NoOuterVertexError("curved drawing needs an outer-face vertex hint");
    const auto idx = drawing.vertex_index(*hint);
    if (!idx) throw NoOuterVertexError("hint vertex " + std::to_string(*hint) + " does not exist");
    vertex = *idx;
  }
  const auto dir = escape_ray(drawing, vertex);
  if (!dir) {
    throw NoOuterVertexError("no escape ray from vertex " +
                             std::to_string(drawing.vertex(vertex).id) +
                             "; it is not certified to lie on the unbounded cell");
  }
  return {vertex, *dir};
}

RotationLabeling relabel_ccw(const Drawing& drawing, std::size_t v0, std::optional<Point> reference) {
  const std::size_t count = drawing.vertex_count();
  if (v0 >= count) throw RangeError("relabel_ccw: root index out of range");
  RotationLabeling labels;
  labels.root = v0;
  labels.reference = reference.value_or(Point{1, 0});

  struct Spoke {
    std::size_t vertex;
    Point dir;
  };
  std::vector<Spoke> spokes;
  for (std::size_t u = 0; u < count; ++u) {
    if (u == v0) continue;
    const Polyline path = drawing.path_from(v0, u);
    spokes.push_back({u, path[1] - path[0]});
  }
  const Point ref = labels.reference;
  std::sort(spokes.begin(), spokes.end(), [&](const Spoke& a, const Spoke& b) {
    return compare_angle(ref, a.dir, b.dir) < 0;
  });
  for (std::size_t k = 1; k < spokes.size(); ++k) {
    if (compare_angle(ref, spokes[k - 1].dir, spokes[k].dir) == 0) {
      throw DegenerateRotationError("edges to vertices " +
                                    std::to_string(drawing.vertex(spokes[k - 1].vertex).id) +
                                    " and " + std::to_string(drawing.vertex(spokes[k].vertex).id) +
                                    " leave the root in the same direction");
    }
  }
  labels.vertex_of.push_back(v0);
  labels.label_of.assign(count, 0);
  for (const Spoke& s : spokes) {
    labels.label_of[s.vertex] = static_cast<Vertex>(labels.vertex_of.size());
    labels.vertex_of.push_back(s.vertex);
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Triangle regions

std::vector<Point> triangle_curve(const Drawing& drawing, const RotationLabeling& labels, Vertex i,
                                  Vertex j) {
  const std::size_t n = labels.n();
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw RangeError("triangle_curve: need distinct labels in [1, " + std::to_string(n) + "]");
  }
  const std::size_t root = labels.root;
  const std::size_t vi = labels.vertex_of[i];
  const std::size_t vj = labels.vertex_of[j];
  std::vector<Point> curve = drawing.path_from(root, vi);
  const Polyline mid = drawing.path_from(vi, vj);
  curve.insert(curve.end(), mid.begin() + 1, mid.end());
  const Polyline back = drawing.path_from(vj, root);
  curve.insert(curve.end(), back.begin() + 1, back.end() - 1);
  return curve;
}

namespace {

bool on_closed_curve(std::span<const Point> curve, Point p) {
  const std::size_t k = curve.size();
  for (std::size_t s = 0; s < k; ++s) {
    if (on_segment(curve[s], curve[(s + 1) % k], p)) return true;
  }
  return false;
}

}  // namespace

bool point_in_triangle_region(const Drawing& drawing, const RotationLabeling& labels, Vertex i,
                              Vertex j, Point p, unsigned ray_skip) {
  if (i >= j) throw RangeError("point_in_triangle_region: need i < j");
  const std::vector<Point> curve = triangle_curve(drawing, labels, i, j);
  if (on_closed_curve(curve, p)) {
    throw BoundaryError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                        ") lies on the triangle curve");
  }
  return ray_parity_inside(curve, p, choose_parity_ray(curve, p, ray_skip));
}

SetFamily triangle_family(const Drawing& drawing, const RotationLabeling& labels) {
  const std::size_t n = labels.n();
  std::vector<Member> members;
  members.reserve(n * (n - 1) / 2);
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      const std::vector<Point> curve = triangle_curve(drawing, labels, i, j);
      const Box box = box_of(curve);
      VertexSet inside(n);
      for (Vertex k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        const Point p = drawing.position(labels.vertex_of[k]);
        if (p.x < box.min_x || p.x > box.max_x || p.y < box.min_y || p.y > box.max_y) continue;
        if (on_closed_curve(curve, p)) {
          throw BoundaryError("vertex v_" + std::to_string(k) + " lies on triangle (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        if (ray_parity_inside(curve, p, choose_parity_ray(curve, p))) inside.insert(k);
      }
      members.push_back({MemberKey{i, j}, std::move(inside), 0});
    }
  }
  return SetFamily(n, std::move(members));
}

}  // namespace shortedge
