#include "suite.hpp"

#include <algorithm>
#include <sstream>

#include "shortedge/errors.hpp"
#include "shortedge/oracle.hpp"
#include "shortedge/random.hpp"
#include "shortedge/short_edge.hpp"

namespace shortedge::cli {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "PASS";
    case CheckStatus::kFail: return "FAIL";
    case CheckStatus::kSkip: return "SKIP";
  }
  return "?";
}

namespace {

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

void add(std::vector<CheckResult>& out, std::string name, bool ok, std::string detail) {
  out.push_back({std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail)});
}

void skip(std::vector<CheckResult>& out, std::string name, std::string why) {
  out.push_back({std::move(name), CheckStatus::kSkip, std::move(why)});
}

void shatter_checks(std::vector<CheckResult>& out, const SetFamily& family,
                    const SuiteOptions& options) {
  for (std::size_t m = 1; m <= options.sampled_max_m; ++m) {
    const std::string name = cat("shatter.m", m);
    if (m > family.size()) {
      skip(out, name, "family has fewer members than m");
      continue;
    }
    const std::uint64_t budget =
        m <= options.exhaustive_max_m ? options.exhaustive_budget : options.samples;
    const ShatterEstimate est = dual_shatter_estimate(family, m, budget, options.seed);
    const std::uint64_t bound = 5 * m * m;
    add(out, name, est.max_cells <= bound,
        cat("max_cells=", est.max_cells, " budget_5m2=", bound,
            est.exhaustive ? " exhaustive" : " sampled", " subfamilies=", est.subfamilies_examined));
  }
}

void pseudometric_check(std::vector<CheckResult>& out, const SetFamily& family,
                        const SuiteOptions& options) {
  const std::size_t n = family.ground_size();
  if (n < 3) {
    skip(out, "pseudometric", "fewer than three vertices");
    return;
  }
  Rng rng(options.seed);
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < options.pseudometric_triples; ++t) {
    const auto u = static_cast<Vertex>(uniform_between(rng, 1, static_cast<std::int64_t>(n)));
    auto v = u;
    auto w = u;
    while (v == u) v = static_cast<Vertex>(uniform_between(rng, 1, static_cast<std::int64_t>(n)));
    while (w == u || w == v) {
      w = static_cast<Vertex>(uniform_between(rng, 1, static_cast<std::int64_t>(n)));
    }
    if (stab_count(family, u, w) > stab_count(family, u, v) + stab_count(family, v, w)) {
      ++violations;
    }
  }
  add(out, "pseudometric", violations == 0,
      cat(options.pseudometric_triples, " triples, ", violations, " violations"));
}

// Returns the matching that was checked, if any.
std::optional<LowStabMatching> matching_checks(std::vector<CheckResult>& out,
                                               const SetFamily& family,
                                               const SuiteOptions& options) {
  const MatchConfig config = match_config(options.constants);
  std::optional<LowStabMatching> matching = options.matching;
  if (!matching) {
    if (family.ground_size() < config.min_n) {
      skip(out, "matching", cat("n = ", family.ground_size(), " below min_n = ", config.min_n));
      return std::nullopt;
    }
    if (!family.unweighted()) {
      skip(out, "matching", "family is weighted");
      return std::nullopt;
    }
    try {
      matching = key_matching(family, config);
    } catch (const std::exception& e) {
      add(out, "matching", false, e.what());
      return std::nullopt;
    }
  }
  const MatchingReport report = verify_matching(family, *matching, config);
  for (const BoundCheck& c : report.checks) {
    add(out, "matching." + c.name, c.passed,
        cat("achieved=", static_cast<double>(c.achieved), " bound=", static_cast<double>(c.bound)));
  }
  return matching;
}

void stab_oracle_check(std::vector<CheckResult>& out, const SetFamily& family) {
  const std::size_t n = family.ground_size();
  if (n > oracle::kStabGuard) {
    skip(out, "oracle.stab_counts", cat("n > ", oracle::kStabGuard));
    return;
  }
  const std::vector<long double> table = oracle::brute_stab_counts(family);
  std::uint64_t mismatches = 0;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      if (stab_count(family, u, v) != table[oracle::pair_slot(n, u, v)]) ++mismatches;
    }
  }
  add(out, "oracle.stab_counts", mismatches == 0, cat(table.size(), " pairs, ", mismatches, " mismatches"));
}

}  // namespace

std::vector<CheckResult> verify_family(const SetFamily& family, const SuiteOptions& options) {
  std::vector<CheckResult> out;
  shatter_checks(out, family, options);
  pseudometric_check(out, family, options);
  matching_checks(out, family, options);
  stab_oracle_check(out, family);
  return out;
}

std::vector<CheckResult> verify_drawing(const Drawing& drawing, const SuiteOptions& options) {
  std::vector<CheckResult> out;
  const std::vector<Violation> violations = validate_simple(drawing);
  if (!violations.empty()) {
    add(out, "simplicity", false,
        cat(violations.size(), " violations, first: ", to_string(violations[0].kind), ": ",
            violations[0].message));
    return out;
  }
  add(out, "simplicity", true,
      cat(drawing.vertex_count(), " vertices, ", drawing.edge_count(), " edges"));

  RotationLabeling labels;
  try {
    const OuterVertex outer = outer_face_vertex(drawing, options.hint);
    labels = relabel_ccw(drawing, outer.vertex, outer.escape_direction);
  } catch (const Error& e) {
    add(out, "labeling", false, e.what());
    return out;
  }
  const std::size_t n = labels.n();
  const SetFamily triangles = triangle_family(drawing, labels);

  shatter_checks(out, triangles, options);
  const std::optional<LowStabMatching> matching = matching_checks(out, triangles, options);

  PipelineConfig config = pipeline_config(options.constants);
  config.hint = options.hint;
  config.jobs = options.jobs;
  PipelineReport report;
  try {
    report = select_short_edge(drawing, config);
  } catch (const std::exception& e) {
    add(out, "pipeline", false, e.what());
    return out;
  }
  add(out, "pipeline.bound", report.passed,
      cat("crossings=", report.crossing_count, " bound=", static_cast<double>(report.bound),
          report.fallback ? " (fallback)" : ""));
  if (report.fallback) {
    skip(out, "pipeline.observation1", report.fallback_reason);
  } else {
    add(out, "pipeline.observation1", report.observation1, cat("|E4|=", report.e_sizes[4]));
    const auto partition =
        std::find_if(report.diagnostics.begin(), report.diagnostics.end(),
                     [](const BoundCheck& c) { return c.name == "classification_partition"; });
    add(out, "pipeline.classification_partition",
        partition != report.diagnostics.end() && partition->passed,
        cat("crossings=", report.crossing_count));
  }
  const oracle::MinCrossingEdge best = oracle::brute_min_crossing_edge(drawing);
  add(out, "oracle.sandwich", best.count <= report.crossing_count,
      cat("oracle_min=", best.count, " chosen=", report.crossing_count));

  if (n > oracle::kStabGuard) {
    skip(out, "oracle", cat("n > ", oracle::kStabGuard));
    return out;
  }
  {
    const auto sets = oracle::brute_triangle_sets(drawing, labels);
    std::uint64_t mismatches = 0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      if (triangles.member(k).set.to_vector() != sets[k]) ++mismatches;
    }
    add(out, "oracle.triangle_family", mismatches == 0,
        cat(sets.size(), " triangles, ", mismatches, " mismatches"));
  }
  stab_oracle_check(out, triangles);

  if (report.fallback || !matching) {
    skip(out, "oracle.pipeline", "no matching computed");
    return out;
  }
  {
    const std::vector<std::uint32_t> brute = oracle::brute_kappa(triangles, matching->pairs);
    add(out, "oracle.kappa", brute == matching->kappa, cat(brute.size(), " members"));
  }
  if (n > oracle::kPhiGuard) {
    skip(out, "oracle.phi", cat("n > ", oracle::kPhiGuard));
    return out;
  }
  {
    LowStabMatching m1;
    m1.n = n;
    m1.pairs = report.m1_pairs;
    const Gamma1 gamma = build_gamma1(triangles, m1);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t p = 0; p < gamma.out.size(); ++p) {
      for (std::uint32_t q : gamma.out[p]) arcs.emplace_back(p, q);
    }
    const auto brute = oracle::brute_gamma1_arcs(drawing, labels, report.m1_pairs);
    add(out, "oracle.gamma1", arcs == brute, cat(arcs.size(), " arcs, oracle ", brute.size()));
  }
  {
    std::vector<VertexPair> m2;
    std::vector<std::uint64_t> values;
    for (const auto& [pair, value] : report.phi) {
      m2.push_back(pair);
      values.push_back(value);
    }
    const auto brute = oracle::brute_phi(drawing, labels, m2);
    add(out, "oracle.phi", brute == values, cat(m2.size(), " candidates"));
  }
  {
    const CrossingMatrix crossings = crossing_matrix(drawing);
    const CrossingClasses classes =
        classify_crossings(drawing, labels, report.chosen.first, report.chosen.second,
                           report.leftover, triangles, crossings);
    const auto brute = oracle::brute_classification(drawing, labels, report.chosen.first,
                                                    report.chosen.second, report.leftover);
    add(out, "oracle.classification", classes.edges == brute,
        cat(classes.total(), " crossing edges"));
  }
  return out;
}

}  // namespace shortedge::cli
