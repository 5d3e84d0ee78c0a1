#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace shortedge {

// Integer plane point. Coordinates are limited to |c| <= kMaxCoordinate so
// every predicate below can be evaluated exactly in 128-bit arithmetic.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 30;

using Polyline = std::vector<Point>;
__extension__ typedef __int128 int128;

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }

inline int128 cross(Point a, Point b) {
  return static_cast<int128>(a.x) * b.y - static_cast<int128>(a.y) * b.x;
}

inline int128 dot(Point a, Point b) {
  return static_cast<int128>(a.x) * b.x + static_cast<int128>(a.y) * b.y;
}

inline int sign(int128 v) { return (v > 0) - (v < 0); }

// +1 if (a, b, c) turns counterclockwise, -1 clockwise, 0 collinear.
inline int orient(Point a, Point b, Point c) { return sign(cross(b - a, c - a)); }

bool in_coordinate_range(Point p);

// p lies on the closed segment [a, b].
bool on_segment(Point a, Point b, Point p);

enum class SegmentContact {
  kNone,
  // Interiors cross at one point that is an endpoint of neither segment.
  kProper,
  // Any other common point: an endpoint touching the other segment, or a
  // collinear overlap.
  kTouch,
};

SegmentContact classify_segments(Point a, Point b, Point c, Point d);

// Counterclockwise angular order of direction vectors measured from
// `reference`, with angles taken in [0, 2*pi). Returns <0, 0, >0.
// Directions must be nonzero.
int compare_angle(Point reference, Point u, Point v);

// Directions strictly inside the counterclockwise cone from u to v (u and v
// not parallel-equal). Used to build escape-ray candidates.
Point cone_interior_direction(Point u, Point v);

// Ray from `origin` in direction `dir` (t > 0) meets the closed segment
// [a, b] at a point other than `origin` itself.
bool ray_hits_segment(Point origin, Point dir, Point a, Point b);

// Ray parity of a closed polygon (vertices in order, last joined to first)
// for a query point not on the polygon. The ray must avoid all polygon
// vertices and be non-parallel to every polygon segment.
bool ray_parity_inside(std::span<const Point> closed, Point p, Point dir);

// A direction usable by ray_parity_inside for p, chosen deterministically
// from the slopes (1, k), k = 0, 1, ...; `skip` selects a later valid one.
Point choose_parity_ray(std::span<const Point> closed, Point p, unsigned skip = 0);

// Signed doubled area of a closed polygon; positive when counterclockwise.
int128 doubled_signed_area(std::span<const Point> closed);

// Strict convex hull vertices (no collinear boundary points), indices into
// `pts`, counterclockwise.
std::vector<std::size_t> convex_hull_indices(std::span<const Point> pts);

}  // namespace shortedge
