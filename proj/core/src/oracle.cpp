#include "shortedge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "shortedge/errors.hpp"
#include "shortedge/int_math.hpp"

namespace shortedge::oracle {

namespace {

bool segments_cross(Point a, Point b, Point c, Point d) {
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

bool edges_cross(const Polyline& p, const Polyline& q) {
  for (std::size_t s = 0; s + 1 < p.size(); ++s) {
    for (std::size_t t = 0; t + 1 < q.size(); ++t) {
      if (segments_cross(p[s], p[s + 1], q[t], q[t + 1])) return true;
    }
  }
  return false;
}

Polyline oriented(const Drawing& drawing, std::size_t from, std::size_t to) {
  const auto e = drawing.edge_index(from, to);
  if (!e) throw PreconditionError("oracle: drawing is missing an edge");
  Polyline path = drawing.edge(*e).path;
  if (path.front() != drawing.position(from)) std::reverse(path.begin(), path.end());
  return path;
}

// Closed curve v_0 -> v_i -> v_j -> v_0 with repeated junction points.
Polyline cycle(const Drawing& drawing, const RotationLabeling& labels, Vertex i, Vertex j) {
  const std::size_t r = labels.vertex_of[0];
  const std::size_t a = labels.vertex_of[i];
  const std::size_t b = labels.vertex_of[j];
  Polyline out;
  for (const auto& [from, to] : {std::pair{r, a}, std::pair{a, b}, std::pair{b, r}}) {
    const Polyline p = oriented(drawing, from, to);
    out.insert(out.end(), p.begin(), p.end() - 1);
  }
  return out;
}

// Winding number of the closed polygon around p (p not on the polygon).
int winding(const Polyline& poly, Point p) {
  int wn = 0;
  const std::size_t k = poly.size();
  for (std::size_t s = 0; s < k; ++s) {
    const Point a = poly[s];
    const Point b = poly[(s + 1) % k];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++wn;
    } else if (b.y <= p.y && orient(a, b, p) < 0) {
      --wn;
    }
  }
  return wn;
}

bool inside(const Polyline& poly, Point p) {
  const std::size_t k = poly.size();
  for (std::size_t s = 0; s < k; ++s) {
    if (on_segment(poly[s], poly[(s + 1) % k], p)) {
      throw BoundaryError("oracle: point lies on a triangle curve");
    }
  }
  return winding(poly, p) != 0;
}

bool inside_label(const Drawing& drawing, const RotationLabeling& labels, const Polyline& poly,
                  Vertex k) {
  return inside(poly, drawing.position(labels.vertex_of[k]));
}

}  // namespace

std::vector<std::uint64_t> per_edge_crossings(const Drawing& drawing) {
  const std::size_t m = drawing.edge_count();
  std::vector<std::uint64_t> counts(m, 0);
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t f = e + 1; f < m; ++f) {
      if (edges_cross(drawing.edge(e).path, drawing.edge(f).path)) {
        ++counts[e];
        ++counts[f];
      }
    }
  }
  return counts;
}

MinCrossingEdge brute_min_crossing_edge(const Drawing& drawing) {
  if (drawing.edge_count() == 0) throw PreconditionError("oracle: drawing has no edges");
  const std::vector<std::uint64_t> counts = per_edge_crossings(drawing);
  std::optional<MinCrossingEdge> best;
  for (std::size_t e = 0; e < counts.size(); ++e) {
    std::int64_t a = drawing.vertex(drawing.edge(e).a).id;
    std::int64_t b = drawing.vertex(drawing.edge(e).b).id;
    if (a > b) std::swap(a, b);
    const MinCrossingEdge c{e, {a, b}, counts[e]};
    if (!best || c.count < best->count || (c.count == best->count && c.ids < best->ids)) best = c;
  }
  return *best;
}

std::vector<long double> brute_stab_counts(const SetFamily& family) {
  const std::size_t n = family.ground_size();
  if (n > kStabGuard) {
    throw GuardError("oracle: stab table limited to n <= " + std::to_string(kStabGuard));
  }
  std::vector<long double> table(n * (n - 1) / 2, 0);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      long double sum = 0;
      for (const Member& m : family.members()) {
        if (m.set.contains(u) != m.set.contains(v)) {
          sum += std::ldexp(1.0L, static_cast<int>(m.log_weight));
        }
      }
      table[pair_slot(n, u, v)] = sum;
    }
  }
  return table;
}

std::vector<std::uint32_t> brute_kappa(const SetFamily& family,
                                       std::span<const VertexPair> pairs) {
  std::vector<std::uint32_t> kappa;
  kappa.reserve(family.size());
  for (const Member& m : family.members()) {
    std::uint32_t count = 0;
    for (const VertexPair& p : pairs) {
      if (m.set.contains(p.first) != m.set.contains(p.second)) ++count;
    }
    kappa.push_back(count);
  }
  return kappa;
}

std::vector<std::vector<Vertex>> brute_triangle_sets(const Drawing& drawing,
                                                     const RotationLabeling& labels) {
  const Vertex n = static_cast<Vertex>(labels.n());
  std::vector<std::vector<Vertex>> sets;
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      const Polyline poly = cycle(drawing, labels, i, j);
      std::vector<Vertex> in;
      for (Vertex k = 1; k <= n; ++k) {
        if (k != i && k != j && inside_label(drawing, labels, poly, k)) in.push_back(k);
      }
      sets.push_back(std::move(in));
    }
  }
  return sets;
}

std::vector<std::uint64_t> brute_phi(const Drawing& drawing, const RotationLabeling& labels,
                                     std::span<const VertexPair> m2) {
  if (labels.n() > kPhiGuard) {
    throw GuardError("oracle: phi table limited to n <= " + std::to_string(kPhiGuard));
  }
  std::vector<std::uint64_t> out;
  out.reserve(m2.size());
  for (const VertexPair& p : m2) {
    const Polyline poly =
        cycle(drawing, labels, std::min(p.first, p.second), std::max(p.first, p.second));
    std::uint64_t count = 0;
    for (const VertexPair& q : m2) {
      if (q == p) continue;
      if (inside_label(drawing, labels, poly, q.first) &&
          inside_label(drawing, labels, poly, q.second)) {
        ++count;
      }
    }
    out.push_back(count);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> brute_gamma1_arcs(
    const Drawing& drawing, const RotationLabeling& labels, std::span<const VertexPair> pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Vertex i = std::min(pairs[p].first, pairs[p].second);
    const Vertex j = std::max(pairs[p].first, pairs[p].second);
    const Polyline poly = cycle(drawing, labels, i, j);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      if (q == p) continue;
      const bool a = inside_label(drawing, labels, poly, pairs[q].first);
      const bool b = inside_label(drawing, labels, poly, pairs[q].second);
      if (a != b) arcs.emplace_back(p, q);
    }
  }
  return arcs;
}

std::array<std::vector<std::size_t>, 5> brute_classification(const Drawing& drawing,
                                                             const RotationLabeling& labels,
                                                             Vertex x, Vertex y,
                                                             std::span<const Vertex> leftover) {
  if (x > y) std::swap(x, y);
  const Polyline xy = oriented(drawing, labels.vertex_of[x], labels.vertex_of[y]);
  const std::set<Vertex> in_x(leftover.begin(), leftover.end());
  std::array<std::vector<std::size_t>, 5> classes;
  for (std::size_t e = 0; e < drawing.edge_count(); ++e) {
    const DrawingEdge& edge = drawing.edge(e);
    if (!edges_cross(edge.path, xy)) continue;
    Vertex i = labels.label_of[edge.a];
    Vertex j = labels.label_of[edge.b];
    if (i > j) std::swap(i, j);
    if (i == 0) {
      classes[0].push_back(e);
    } else if (in_x.count(i) || in_x.count(j)) {
      classes[1].push_back(e);
    } else if ((x < i && i < y) || (x < j && j < y)) {
      classes[2].push_back(e);
    } else {
      const Polyline poly = cycle(drawing, labels, i, j);
      const bool stabbed =
          inside_label(drawing, labels, poly, x) != inside_label(drawing, labels, poly, y);
      classes[stabbed ? 3 : 4].push_back(e);
    }
  }
  return classes;
}

std::size_t brute_venn_cells(const SetFamily& family, std::span<const MemberKey> keys) {
  std::vector<const Member*> chosen;
  for (const MemberKey& k : keys) chosen.push_back(&family.member(family.index_of(k)));
  std::set<std::vector<bool>> signatures;
  for (Vertex v = 1; v <= family.ground_size(); ++v) {
    std::vector<bool> sig;
    for (const Member* m : chosen) sig.push_back(m->set.contains(v));
    signatures.insert(std::move(sig));
  }
  return signatures.size();
}

std::uint64_t brute_max_cells(const SetFamily& family, std::size_t m, std::uint64_t limit) {
  const std::size_t size = family.size();
  if (m == 0 || m > size) throw RangeError("oracle: subfamily size out of range");
  if (binomial_capped(size, m, limit + 1) > limit) {
    throw GuardError("oracle: more than " + std::to_string(limit) + " subfamilies");
  }
  std::vector<std::size_t> idx(m);
  for (std::size_t k = 0; k < m; ++k) idx[k] = k;
  std::vector<MemberKey> keys(m);
  std::uint64_t best = 0;
  for (;;) {
    for (std::size_t k = 0; k < m; ++k) keys[k] = family.member(idx[k]).key;
    best = std::max<std::uint64_t>(best, brute_venn_cells(family, keys));
    std::size_t k = m;
    while (k > 0 && idx[k - 1] == size - m + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t t = k; t < m; ++t) idx[t] = idx[t - 1] + 1;
  }
  return best;
}

OracleReport build_report(const Drawing& drawing, std::optional<std::int64_t> hint,
                          std::span<const VertexPair> m2, std::size_t max_cells_m) {
  OracleReport report;
  report.min_crossing_edge = brute_min_crossing_edge(drawing);
  const std::vector<std::uint64_t> counts = per_edge_crossings(drawing);
  for (std::size_t e = 0; e < counts.size(); ++e) {
    std::int64_t a = drawing.vertex(drawing.edge(e).a).id;
    std::int64_t b = drawing.vertex(drawing.edge(e).b).id;
    if (a > b) std::swap(a, b);
    report.per_edge_crossings.push_back({{a, b}, counts[e]});
  }
  std::sort(report.per_edge_crossings.begin(), report.per_edge_crossings.end());

  const OuterVertex outer = outer_face_vertex(drawing, hint);
  const RotationLabeling labels = relabel_ccw(drawing, outer.vertex, outer.escape_direction);
  const std::size_t n = labels.n();
  if (n >= 2 && n <= kStabGuard) {
    const SetFamily family = SetFamily::from_sets(n, brute_triangle_sets(drawing, labels));
    report.stab_table = brute_stab_counts(family);
    for (std::size_t m = 1; m <= max_cells_m && m <= family.size(); ++m) {
      try {
        report.cell_counts.emplace_back(m, brute_max_cells(family, m));
      } catch (const GuardError&) {
        break;
      }
    }
  }
  if (!m2.empty() && n <= kPhiGuard) {
    const std::vector<std::uint64_t> values = brute_phi(drawing, labels, m2);
    std::vector<std::pair<VertexPair, std::uint64_t>> table;
    for (std::size_t k = 0; k < m2.size(); ++k) table.emplace_back(m2[k], values[k]);
    report.phi_table = std::move(table);
  }
  return report;
}

}  // namespace shortedge::oracle
