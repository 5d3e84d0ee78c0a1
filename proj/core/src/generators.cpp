#include "shortedge/generators.hpp"

#include <cmath>
#include <numbers>

#include "shortedge/errors.hpp"
#include "shortedge/random.hpp"

namespace shortedge {

namespace {

constexpr long double kConvexRadius = 1 << 20;

}  // namespace

Drawing convex_complete(std::size_t m) {
  if (m < 3) throw RangeError("convex_complete needs at least 3 vertices");
  std::vector<DrawingVertex> vertices;
  vertices.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const long double theta = -std::numbers::pi_v<long double> / 2 +
                              2 * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                  static_cast<long double>(m);
    vertices.push_back({static_cast<std::int64_t>(k),
                        {std::llround(kConvexRadius * std::cos(theta)),
                         std::llround(kConvexRadius * std::sin(theta))}});
  }
  for (std::size_t k = 0; k < m; ++k) {
    const Point a = vertices[k].pos;
    const Point b = vertices[(k + 1) % m].pos;
    const Point c = vertices[(k + 2) % m].pos;
    if (orient(a, b, c) <= 0) {
      throw GenerationError("rounded points are not strictly convex for m = " + std::to_string(m));
    }
  }
  return Drawing::straight_line(std::move(vertices));
}

Drawing random_geometric_complete(std::size_t m, std::uint64_t seed, std::int64_t box) {
  if (m < 3) throw RangeError("random_geometric_complete needs at least 3 vertices");
  if (box < 2 || box > kMaxCoordinate) throw RangeError("box size out of range");
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(m);
  const std::uint64_t budget = 1000 * static_cast<std::uint64_t>(m);
  std::uint64_t attempts = 0;
  while (pts.size() < m) {
    if (++attempts > budget) {
      throw GenerationError("no general-position sample after " + std::to_string(budget) +
                            " attempts");
    }
    const Point p{static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(box))),
                  static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(box)))};
    bool ok = true;
    for (std::size_t a = 0; a < pts.size() && ok; ++a) {
      if (pts[a] == p) ok = false;
      for (std::size_t b = a + 1; b < pts.size() && ok; ++b) {
        if (orient(pts[a], pts[b], p) == 0) ok = false;
      }
    }
    if (ok) pts.push_back(p);
  }
  std::vector<DrawingVertex> vertices;
  vertices.reserve(m);
  for (std::size_t k = 0; k < m; ++k) vertices.push_back({static_cast<std::int64_t>(k), pts[k]});
  return Drawing::straight_line(std::move(vertices));
}

Drawing generate(const std::string& generator, std::size_t m, std::uint64_t seed) {
  if (generator == "convex") return convex_complete(m);
  if (generator == "random-geometric") return random_geometric_complete(m, seed);
  throw RangeError("unknown generator '" + generator + "'");
}

}  // namespace shortedge
