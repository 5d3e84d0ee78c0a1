#include "shortedge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shortedge {

bool in_coordinate_range(Point p) {
  return p.x >= -kMaxCoordinate && p.x <= kMaxCoordinate && p.y >= -kMaxCoordinate &&
         p.y <= kMaxCoordinate;
}

bool on_segment(Point a, Point b, Point p) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

SegmentContact classify_segments(Point a, Point b, Point c, Point d) {
  if (std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x) ||
      std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y)) {
    return SegmentContact::kNone;
  }
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return SegmentContact::kProper;
  if ((o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
      (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b))) {
    return SegmentContact::kTouch;
  }
  return SegmentContact::kNone;
}

namespace {

int half_plane(Point reference, Point d) {
  const int128 c = cross(reference, d);
  if (c > 0) return 0;
  if (c == 0 && dot(reference, d) > 0) return 0;
  return 1;
}

std::int64_t rounded_multiplier(long double length, long double scale) {
  const auto m = static_cast<std::int64_t>(std::llround(length * scale));
  return std::max<std::int64_t>(m, 1);
}

}  // namespace

int compare_angle(Point reference, Point u, Point v) {
  const int hu = half_plane(reference, u);
  const int hv = half_plane(reference, v);
  if (hu != hv) return hu < hv ? -1 : 1;
  const int128 c = cross(u, v);
  if (c > 0) return -1;
  if (c < 0) return 1;
  return 0;
}

Point cone_interior_direction(Point u, Point v) {
  const int128 c = cross(u, v);
  const int128 dp = dot(u, v);
  if (c == 0 && dp > 0) return {-u.x, -u.y};
  if (c == 0) return {-u.y, u.x};
  const long double lu = std::hypot(static_cast<long double>(u.x), static_cast<long double>(u.y));
  const long double lv = std::hypot(static_cast<long double>(v.x), static_cast<long double>(v.y));
  const long double scale = static_cast<long double>(1 << 20) / std::max(lu, lv);
  const std::int64_t mu = rounded_multiplier(lv, scale);
  const std::int64_t mv = rounded_multiplier(lu, scale);
  Point d{u.x * mu + v.x * mv, u.y * mu + v.y * mv};
  if (c < 0) d = {-d.x, -d.y};
  return d;
}

bool ray_hits_segment(Point origin, Point dir, Point a, Point b) {
  const int o1 = sign(cross(dir, a - origin));
  const int o2 = sign(cross(dir, b - origin));
  if (o1 == o2 && o1 != 0) return false;
  if (o1 == 0 && o2 == 0) {
    return dot(dir, a - origin) > 0 || dot(dir, b - origin) > 0;
  }
  const int num = sign(cross(a - origin, b - a));
  const int den = sign(cross(dir, b - a));
  return num != 0 && num == den;
}

bool ray_parity_inside(std::span<const Point> closed, Point p, Point dir) {
  bool inside = false;
  const std::size_t k = closed.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Point a = closed[i];
    const Point b = closed[(i + 1) % k];
    const int o1 = sign(cross(dir, a - p));
    const int o2 = sign(cross(dir, b - p));
    if (o1 * o2 >= 0) continue;
    const int num = sign(cross(a - p, b - a));
    const int den = sign(cross(dir, b - a));
    if (num != 0 && num == den) inside = !inside;
  }
  return inside;
}

Point choose_parity_ray(std::span<const Point> closed, Point p, unsigned skip) {
  const std::size_t k = closed.size();
  for (std::int64_t slope = 0;; ++slope) {
    const Point dir{1, slope};
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      const Point a = closed[i];
      const Point b = closed[(i + 1) % k];
      const Point rel = a - p;
      if (cross(dir, rel) == 0 && dot(dir, rel) > 0) ok = false;
      if (cross(dir, b - a) == 0) ok = false;
    }
    if (!ok) continue;
    if (skip == 0) return dir;
    --skip;
  }
}

int128 doubled_signed_area(std::span<const Point> closed) {
  int128 area = 0;
  const std::size_t k = closed.size();
  for (std::size_t i = 0; i < k; ++i) {
    area += cross(closed[i], closed[(i + 1) % k]);
  }
  return area;
}

std::vector<std::size_t> convex_hull_indices(std::span<const Point> pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  if (order.size() < 3) return order;

  std::vector<std::size_t> hull(2 * order.size());
  std::size_t k = 0;
  for (std::size_t idx : order) {
    while (k >= 2 && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx]) <= 0) --k;
    hull[k++] = idx;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[*it]) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace shortedge
