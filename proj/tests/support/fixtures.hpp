#pragma once

#include <cstdint>
#include <vector>

#include "shortedge/drawing.hpp"
#include "shortedge/random.hpp"
#include "shortedge/set_system.hpp"

namespace shortedge::testing {

// Seven-vertex drawing with one curved edge (v0 v1) reproducing the
// combinatorics of the rooted example: v0 on the outer face, and the
// triangle on v0, v3, v6 enclosing exactly v1 and v4.
inline Drawing curved_k7() {
  std::vector<DrawingVertex> vertices{{0, {0, 0}},   {1, {-7, 22}},   {2, {30, 25}},
                                      {3, {25, 43}}, {4, {0, 30}},    {5, {-60, 104}},
                                      {6, {-43, 25}}};
  std::vector<EdgeSpec> edges;
  for (std::int64_t a = 0; a < 7; ++a) {
    for (std::int64_t b = a + 1; b < 7; ++b) edges.push_back({a, b, {}});
  }
  edges[0].path = {{0, 0}, {100, 36}, {100, 120}, {-5, 120}, {-7, 22}};
  return Drawing(std::move(vertices), std::move(edges));
}

// K5 whose edge 3-4 swings out past vertex 0. With vertex 3 as the root,
// the pair of labels (1, 2) has a nonempty E4.
inline Drawing curved_e4() {
  std::vector<DrawingVertex> vertices{
      {0, {17, 4}}, {1, {9, -6}}, {2, {0, -13}}, {3, {4, -12}}, {4, {-20, -12}}};
  std::vector<EdgeSpec> edges;
  for (std::int64_t a = 0; a < 5; ++a) {
    for (std::int64_t b = a + 1; b < 5; ++b) edges.push_back({a, b, {}});
  }
  edges[9].path = {{4, -12}, {36, 15}, {-17, -10}, {-20, -12}};
  return Drawing(std::move(vertices), std::move(edges));
}

inline Drawing straight(std::vector<Point> points) {
  std::vector<DrawingVertex> vertices;
  for (std::size_t k = 0; k < points.size(); ++k) {
    vertices.push_back({static_cast<std::int64_t>(k), points[k]});
  }
  return Drawing::straight_line(std::move(vertices));
}

// K4 on a triangle with one interior point.
inline Drawing k4_with_interior_point() { return straight({{0, 0}, {10, 0}, {0, 10}, {4, 4}}); }

// Convex K4 where the polyline of 0-3 loops below vertex 1 and crosses the
// hull edge 1-2 twice before returning around vertex 2.
inline Drawing double_crossing() {
  std::vector<DrawingVertex> vertices{{0, {0, 0}}, {1, {10, -10}}, {2, {20, 0}}, {3, {10, 10}}};
  std::vector<EdgeSpec> edges{{0, 1, {}}, {0, 2, {}}, {0, 3, {}},
                              {1, 2, {}}, {1, 3, {}}, {2, 3, {}}};
  edges[2].path = {{0, 0}, {8, -14}, {16, -2}, {22, -6}, {26, 0}, {12, 14}, {10, 10}};
  return Drawing(std::move(vertices), std::move(edges));
}

// Straight K4 except that edge 0-1 bends exactly at vertex 2.
inline Drawing edge_through_vertex() {
  std::vector<DrawingVertex> vertices{{0, {0, 0}}, {1, {20, 0}}, {2, {10, 10}}, {3, {10, -10}}};
  std::vector<EdgeSpec> edges{{0, 1, {}}, {0, 2, {}}, {0, 3, {}},
                              {1, 2, {}}, {1, 3, {}}, {2, 3, {}}};
  edges[0].path = {{0, 0}, {5, 12}, {10, 10}, {15, 12}, {20, 0}};
  return Drawing(std::move(vertices), std::move(edges));
}

// Random unweighted family of `members` subsets of {1..n}, each vertex in
// each set with probability num/den.
inline SetFamily random_family(Rng& rng, std::size_t n, std::size_t members, std::uint64_t num = 1,
                               std::uint64_t den = 2) {
  std::vector<std::vector<Vertex>> sets(members);
  for (auto& s : sets) {
    for (Vertex v = 1; v <= n; ++v) {
      if (uniform_below(rng, den) < num) s.push_back(v);
    }
  }
  return SetFamily::from_sets(n, sets);
}

// Same shape with random small log weights.
inline SetFamily random_weighted_family(Rng& rng, std::size_t n, std::size_t members,
                                        std::uint32_t max_log_weight) {
  const SetFamily base = random_family(rng, n, members);
  std::vector<std::uint32_t> weights(members);
  for (auto& w : weights) w = static_cast<std::uint32_t>(uniform_below(rng, max_log_weight + 1));
  return base.reweighted(weights);
}

}  // namespace shortedge::testing
