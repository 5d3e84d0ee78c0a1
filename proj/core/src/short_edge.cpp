#include "shortedge/short_edge.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "shortedge/errors.hpp"
#include "shortedge/int_math.hpp"
#include "shortedge/oracle.hpp"

namespace shortedge {

std::uint64_t Gamma1::arc_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& targets : out) total += targets.size();
  return total;
}

bool Gamma1::has_arc(std::size_t from, std::size_t to) const {
  const auto& targets = out.at(from);
  return std::binary_search(targets.begin(), targets.end(), static_cast<std::uint32_t>(to));
}

Gamma1 build_gamma1(const SetFamily& triangles, const LowStabMatching& m1) {
  if (triangles.ground_size() != m1.n) {
    throw PreconditionError("build_gamma1: family and matching use different ground sets");
  }
  Gamma1 g;
  g.nodes = m1.pairs;
  const std::size_t k = g.nodes.size();
  g.out.assign(k, {});
  g.in_degree.assign(k, 0);
  for (std::size_t p = 0; p < k; ++p) {
    const Vertex i = std::min(g.nodes[p].first, g.nodes[p].second);
    const Vertex j = std::max(g.nodes[p].first, g.nodes[p].second);
    const VertexSet& t = triangles.member(triangles.index_of({i, j})).set;
    for (std::size_t q = 0; q < k; ++q) {
      if (q != p && stabs(t, g.nodes[q].first, g.nodes[q].second)) {
        g.out[p].push_back(static_cast<std::uint32_t>(q));
        ++g.in_degree[q];
      }
    }
  }
  return g;
}

std::vector<VertexPair> filter_m2(const Gamma1& gamma, std::size_t n) {
  std::vector<VertexPair> m2;
  for (std::size_t p = 0; p < gamma.nodes.size(); ++p) {
    if (less_than_root(gamma.in_degree[p], n, 3, 4)) m2.push_back(gamma.nodes[p]);
  }
  if (m2.empty()) {
    throw EmptyM2Error("filter_m2: every one of " + std::to_string(gamma.nodes.size()) +
                       " pairs has in-degree >= n^{3/4}");
  }
  return m2;
}

std::uint64_t phi(const Drawing& drawing, const RotationLabeling& labels,
                  std::span<const VertexPair> m2, Vertex i, Vertex j) {
  if (i >= j) throw RangeError("phi: need i < j");
  std::uint64_t count = 0;
  for (const VertexPair& q : m2) {
    if (q.first == i || q.first == j || q.second == i || q.second == j) continue;
    if (point_in_triangle_region(drawing, labels, i, j, drawing.position(labels.vertex_of[q.first])) &&
        point_in_triangle_region(drawing, labels, i, j,
                                 drawing.position(labels.vertex_of[q.second]))) {
      ++count;
    }
  }
  return count;
}

std::array<std::size_t, 5> CrossingClasses::sizes() const noexcept {
  std::array<std::size_t, 5> s{};
  for (std::size_t k = 0; k < 5; ++k) s[k] = edges[k].size();
  return s;
}

std::size_t CrossingClasses::total() const noexcept {
  std::size_t t = 0;
  for (const auto& e : edges) t += e.size();
  return t;
}

CrossingClasses classify_crossings(const Drawing& drawing, const RotationLabeling& labels,
                                   Vertex x, Vertex y, std::span<const Vertex> leftover,
                                   const SetFamily& triangles, const CrossingMatrix& crossings) {
  if (x >= y) throw RangeError("classify_crossings: need x < y");
  const std::size_t xy = drawing.edge_between(labels.vertex_of[x], labels.vertex_of[y]);
  std::vector<char> in_leftover(labels.n() + 1, 0);
  for (Vertex v : leftover) in_leftover.at(v) = 1;

  CrossingClasses classes;
  for (std::size_t e = 0; e < drawing.edge_count(); ++e) {
    if (!crossings.crosses(xy, e)) continue;
    const DrawingEdge& edge = drawing.edge(e);
    const Vertex a = std::min(labels.label_of[edge.a], labels.label_of[edge.b]);
    const Vertex b = std::max(labels.label_of[edge.a], labels.label_of[edge.b]);
    std::size_t cls = 4;
    if (a == 0) {
      cls = 0;
    } else if (in_leftover[a] || in_leftover[b]) {
      cls = 1;
    } else if ((x < a && a < y) || (x < b && b < y)) {
      cls = 2;
    } else if (stabs(triangles.member(triangles.index_of({a, b})).set, x, y)) {
      cls = 3;
    }
    classes.edges[cls].push_back(e);
  }
  return classes;
}

USplit u1_u2_split(const Drawing& drawing, const RotationLabeling& labels, Vertex x, Vertex y,
                   const CrossingMatrix& crossings) {
  if (x >= y) throw RangeError("u1_u2_split: need x < y");
  const std::size_t xy = drawing.edge_between(labels.vertex_of[x], labels.vertex_of[y]);
  USplit split;
  for (Vertex k = 1; k <= labels.n(); ++k) {
    if (x <= k && k <= y) continue;
    const std::size_t spoke = drawing.edge_between(labels.root, labels.vertex_of[k]);
    (crossings.crosses(xy, spoke) ? split.u1 : split.u2).push_back(k);
  }
  return split;
}

bool verify_observation1(const Drawing& drawing, const RotationLabeling& labels,
                         std::span<const std::size_t> e4, const USplit& split) {
  std::vector<char> side(labels.n() + 1, 0);
  for (Vertex v : split.u1) side.at(v) |= 1;
  for (Vertex v : split.u2) side.at(v) |= 2;
  for (std::size_t e : e4) {
    const DrawingEdge& edge = drawing.edge(e);
    const char a = side.at(labels.label_of[edge.a]);
    const char b = side.at(labels.label_of[edge.b]);
    if (!((a == 1 && b == 2) || (a == 2 && b == 1))) return false;
  }
  return true;
}

namespace {

template <typename F>
auto run_stage(const char* stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const TooSmallError&) {
    throw;
  } catch (const EmptyM2Error&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::vector<std::uint64_t> phi_values(const Drawing& drawing, const RotationLabeling& labels,
                                      const std::vector<VertexPair>& m2, unsigned jobs) {
  std::vector<std::uint64_t> values(m2.size(), 0);
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t k = start; k < m2.size(); k += stride) {
      const Vertex i = std::min(m2[k].first, m2[k].second);
      const Vertex j = std::max(m2[k].first, m2[k].second);
      values[k] = phi(drawing, labels, m2, i, j);
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(jobs, 1U), m2.size());
  if (threads <= 1) {
    work(0, 1);
    return values;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        work(t, threads);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return values;
}

void add_check(PipelineReport& r, std::string name, long double bound, long double achieved) {
  r.diagnostics.push_back({std::move(name), bound, achieved, achieved <= bound});
}

void fill_fallback(PipelineReport& report, const Drawing& drawing, const RotationLabeling* labels,
                   std::string reason) {
  const oracle::MinCrossingEdge best = oracle::brute_min_crossing_edge(drawing);
  report.fallback = true;
  report.fallback_reason = std::move(reason);
  report.chosen_ids = best.ids;
  report.crossing_count = best.count;
  if (labels != nullptr) {
    const DrawingEdge& e = drawing.edge(best.edge);
    const Vertex a = labels->label_of[e.a];
    const Vertex b = labels->label_of[e.b];
    report.chosen = {std::min(a, b), std::max(a, b)};
  }
}

}  // namespace

PipelineReport select_short_edge(const Drawing& drawing, const PipelineConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.match.validate();
  PipelineReport report;

  // Throws on the first violation, so this is also the simplicity check.
  const CrossingMatrix crossings = run_stage("validate", [&] { return crossing_matrix(drawing); });
  if (drawing.vertex_count() < 3) {
    throw StageError("validate", "need at least 3 vertices");
  }

  const OuterVertex outer =
      run_stage("outer_face", [&] { return outer_face_vertex(drawing, config.hint); });
  const RotationLabeling labels = run_stage(
      "relabel", [&] { return relabel_ccw(drawing, outer.vertex, outer.escape_direction); });
  const std::size_t n = labels.n();
  report.n = n;
  report.root_id = drawing.vertex(outer.vertex).id;
  report.escape_direction = outer.escape_direction;
  for (std::size_t v : labels.vertex_of) report.label_ids.push_back(drawing.vertex(v).id);
  report.bound = static_cast<long double>(config.c4) *
                 std::pow(static_cast<long double>(n), 7.0L / 4.0L);

  auto finish = [&]() {
    report.passed = static_cast<long double>(report.crossing_count) <= report.bound;
    report.runtime_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
  };

  if (n < config.match.min_n) {
    fill_fallback(report, drawing, &labels,
                  "n = " + std::to_string(n) + " is below min_n = " +
                      std::to_string(config.match.min_n));
    return finish();
  }

  const SetFamily triangles =
      run_stage("triangle_family", [&] { return triangle_family(drawing, labels); });
  LowStabMatching m1;
  try {
    m1 = run_stage("key_matching", [&] { return key_matching(triangles, config.match); });
  } catch (const TooSmallError& e) {
    fill_fallback(report, drawing, &labels, e.what());
    return finish();
  }
  report.matching_report =
      run_stage("verify_matching", [&] { return verify_matching(triangles, m1, config.match); });
  report.m1_pairs = m1.pairs;
  report.leftover = m1.leftover;
  report.m1_size = m1.pairs.size();
  report.leftover_size = m1.leftover.size();
  report.max_kappa = m1.max_kappa();

  const Gamma1 gamma = run_stage("gamma1", [&] { return build_gamma1(triangles, m1); });
  report.gamma1_arcs = gamma.arc_count();
  std::vector<VertexPair> m2;
  try {
    m2 = run_stage("filter_m2", [&] { return filter_m2(gamma, n); });
  } catch (const EmptyM2Error& e) {
    fill_fallback(report, drawing, &labels, e.what());
    return finish();
  }

  const std::vector<std::uint64_t> values =
      run_stage("phi", [&] { return phi_values(drawing, labels, m2, config.jobs); });
  std::size_t best = 0;
  for (std::size_t k = 0; k < m2.size(); ++k) {
    report.phi.emplace_back(m2[k], values[k]);
    if (values[k] < values[best] || (values[k] == values[best] && m2[k] < m2[best])) best = k;
  }
  const Vertex x = std::min(m2[best].first, m2[best].second);
  const Vertex y = std::max(m2[best].first, m2[best].second);
  report.chosen = {x, y};
  report.chosen_ids = {drawing.vertex(labels.vertex_of[x]).id,
                       drawing.vertex(labels.vertex_of[y]).id};
  if (report.chosen_ids.first > report.chosen_ids.second) {
    std::swap(report.chosen_ids.first, report.chosen_ids.second);
  }

  const std::size_t xy = drawing.edge_between(labels.vertex_of[x], labels.vertex_of[y]);
  report.crossing_count = crossings.total(xy);

  const CrossingClasses classes = run_stage("classify", [&] {
    return classify_crossings(drawing, labels, x, y, m1.leftover, triangles, crossings);
  });
  report.e_sizes = classes.sizes();
  const USplit split =
      run_stage("u_split", [&] { return u1_u2_split(drawing, labels, x, y, crossings); });
  report.u_sizes = {split.u1.size(), split.u2.size()};
  report.observation1 = verify_observation1(drawing, labels, classes.edges[4], split);

  const auto nl = static_cast<long double>(n);
  const long double n34 = std::pow(nl, 0.75L);
  const long double n74 = std::pow(nl, 1.75L);
  const long double c3 = config.match.c3;
  add_check(report, "gamma1_arcs", static_cast<long double>(m1.pairs.size()) * c3 * std::sqrt(nl),
            static_cast<long double>(report.gamma1_arcs));
  add_check(report, "m2_removed", static_cast<long double>(report.gamma1_arcs) / n34,
            static_cast<long double>(m1.pairs.size() - m2.size()));
  report.diagnostics.push_back({"m2_size", nl / 2 - n34 - c3 * n34,
                                static_cast<long double>(m2.size()),
                                static_cast<long double>(m2.size()) >= nl / 2 - n34 - c3 * n34});
  add_check(report, "e0", nl, static_cast<long double>(report.e_sizes[0]));
  add_check(report, "e1", 2 * n74, static_cast<long double>(report.e_sizes[1]));
  add_check(report, "e2", n74, static_cast<long double>(report.e_sizes[2]));
  add_check(report, "e3", c3 * n74, static_cast<long double>(report.e_sizes[3]));
  report.diagnostics.push_back({"classification_partition",
                                static_cast<long double>(report.crossing_count),
                                static_cast<long double>(classes.total()),
                                classes.total() == report.crossing_count});
  const std::size_t between = y - x - 1;
  const std::size_t covered = split.u1.size() + split.u2.size() + between + 2;
  report.diagnostics.push_back({"u_partition", nl, static_cast<long double>(covered),
                                covered == n});
  report.diagnostics.push_back(
      {"observation1", 0, report.observation1 ? 0.0L : 1.0L, report.observation1});
  return finish();
}

}  // namespace shortedge
