#include "shortedge/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <type_traits>

#include "shortedge/errors.hpp"

namespace shortedge::io {

namespace {

void check_object(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return item.key() == a; });
    if (!known) throw ParseError(where + ": unknown field '" + item.key() + "'");
  }
}

template <typename T>
struct is_vector : std::false_type {};
template <typename U>
struct is_vector<std::vector<U>> : std::true_type {};

// nlohmann converts 0.5 to an integer silently; exact inputs must not.
template <typename T>
void check_integers(const json& v, const std::string& where) {
  if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    if (std::is_unsigned_v<T> && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
      throw ParseError(where + ": expected a non-negative integer");
    }
  } else if constexpr (is_vector<T>::value) {
    if (!v.is_array()) throw ParseError(where + ": expected an array");
    for (std::size_t k = 0; k < v.size(); ++k) {
      check_integers<typename T::value_type>(v[k], where + "[" + std::to_string(k) + "]");
    }
  }
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  check_integers<T>(j.at(key), where + "." + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key, where);
}

// The "format" tag is optional on input; when present it must match.
void expect_format(const json& j, const char* format, const std::string& where) {
  if (j.contains("format") && field<std::string>(j, "format", where) != format) {
    throw ParseError(where + ": format must be '" + format + "'");
  }
}

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ParseError(where + ": expected [x, y] integers");
  }
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

json pair_json(const VertexPair& p) { return json::array({p.first, p.second}); }

VertexPair pair_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected a pair");
  check_integers<std::vector<Vertex>>(j, where);
  try {
    return {j[0].get<Vertex>(), j[1].get<Vertex>()};
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::string key_string(const MemberKey& k) {
  return std::to_string(k.first) + "," + std::to_string(k.second);
}

MemberKey key_from_string(const std::string& s, const std::string& where) {
  const auto comma = s.find(',');
  std::size_t used_i = 0;
  std::size_t used_j = 0;
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    const std::string a = s.substr(0, comma);
    const std::string b = s.substr(comma + 1);
    const unsigned long i = std::stoul(a, &used_i);
    const unsigned long j = std::stoul(b, &used_j);
    if (used_i != a.size() || used_j != b.size()) throw std::invalid_argument("trailing text");
    return {static_cast<Vertex>(i), static_cast<Vertex>(j)};
  } catch (const std::exception&) {
    throw ParseError(where + ": key '" + s + "' is not of the form \"i,j\"");
  }
}

json checks_json(const std::vector<BoundCheck>& checks) {
  json out = json::array();
  for (const BoundCheck& c : checks) {
    out.push_back({{"name", c.name},
                   {"bound", static_cast<double>(c.bound)},
                   {"achieved", static_cast<double>(c.achieved)},
                   {"passed", c.passed}});
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Drawing

json to_json(const Drawing& drawing, std::optional<std::int64_t> outer_vertex) {
  json vertices = json::array();
  for (const DrawingVertex& v : drawing.vertices()) {
    vertices.push_back({{"id", v.id}, {"x", v.pos.x}, {"y", v.pos.y}});
  }
  json edges = json::array();
  for (const DrawingEdge& e : drawing.edges()) {
    json edge{{"u", drawing.vertex(e.a).id}, {"v", drawing.vertex(e.b).id}};
    if (e.path.size() != 2) {
      json path = json::array();
      for (const Point& p : e.path) path.push_back(point_json(p));
      edge["polyline"] = std::move(path);
    }
    edges.push_back(std::move(edge));
  }
  json out{{"format", "drawing"}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
  if (outer_vertex) out["outer_vertex"] = *outer_vertex;
  return out;
}

DrawingFile drawing_from_json(const json& j) {
  const std::string where = "drawing";
  check_object(j, {"format", "vertices", "edges", "outer_vertex"}, where);
  expect_format(j, "drawing", where);
  const json& vs = j.contains("vertices") ? j.at("vertices") : json();
  if (!vs.is_array()) throw ParseError(where + ".vertices: expected an array");
  std::vector<DrawingVertex> vertices;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const std::string w = where + ".vertices[" + std::to_string(k) + "]";
    check_object(vs[k], {"id", "x", "y"}, w);
    vertices.push_back({field<std::int64_t>(vs[k], "id", w),
                        {field<std::int64_t>(vs[k], "x", w), field<std::int64_t>(vs[k], "y", w)}});
  }
  const json& es = j.contains("edges") ? j.at("edges") : json();
  if (!es.is_array()) throw ParseError(where + ".edges: expected an array");
  std::vector<EdgeSpec> edges;
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string w = where + ".edges[" + std::to_string(k) + "]";
    check_object(es[k], {"u", "v", "polyline"}, w);
    EdgeSpec spec{field<std::int64_t>(es[k], "u", w), field<std::int64_t>(es[k], "v", w), {}};
    if (es[k].contains("polyline")) {
      const json& path = es[k].at("polyline");
      if (!path.is_array()) throw ParseError(w + ".polyline: expected an array");
      for (std::size_t p = 0; p < path.size(); ++p) {
        spec.path.push_back(point_from(path[p], w + ".polyline[" + std::to_string(p) + "]"));
      }
    }
    edges.push_back(std::move(spec));
  }
  return {Drawing(std::move(vertices), std::move(edges)),
          optional_field<std::int64_t>(j, "outer_vertex", where)};
}

// ---------------------------------------------------------------------------
// Set families and matchings

json to_json(const SetFamily& family) {
  json members = json::array();
  for (const Member& m : family.members()) {
    members.push_back({{"key", json::array({m.key.first, m.key.second})},
                       {"set", m.set.to_vector()},
                       {"logw", m.log_weight}});
  }
  return {{"format", "set-family"}, {"n", family.ground_size()}, {"members", std::move(members)}};
}

SetFamily family_from_json(const json& j) {
  const std::string where = "set-family";
  check_object(j, {"format", "n", "members"}, where);
  expect_format(j, "set-family", where);
  const auto n = field<std::size_t>(j, "n", where);
  const json& ms = j.contains("members") ? j.at("members") : json();
  if (!ms.is_array()) throw ParseError(where + ".members: expected an array");
  std::vector<Member> members;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const std::string w = where + ".members[" + std::to_string(k) + "]";
    check_object(ms[k], {"key", "set", "logw"}, w);
    const VertexPair key = pair_from(ms[k].contains("key") ? ms[k].at("key") : json(), w + ".key");
    VertexSet set(n);
    for (Vertex v : field<std::vector<Vertex>>(ms[k], "set", w)) {
      if (v < 1 || v > n) throw ParseError(w + ".set: vertex " + std::to_string(v) + " out of range");
      set.insert(v);
    }
    members.push_back({{key.first, key.second},
                       std::move(set),
                       optional_field<std::uint32_t>(ms[k], "logw", w).value_or(0)});
  }
  try {
    return SetFamily(n, std::move(members));
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

json to_json(const LowStabMatching& m) {
  json pairs = json::array();
  for (const VertexPair& p : m.pairs) pairs.push_back(pair_json(p));
  json kappa = json::object();
  for (std::size_t k = 0; k < m.kappa_keys.size() && k < m.kappa.size(); ++k) {
    kappa[key_string(m.kappa_keys[k])] = m.kappa[k];
  }
  json trace = json::array();
  for (const MatchStep& s : m.trace) {
    trace.push_back({{"pair", pair_json(s.pair)},
                     {"weighted_stab", static_cast<double>(s.weighted_stab.value())},
                     {"weight_before", static_cast<double>(s.weight_before.value())},
                     {"step_bound", static_cast<double>(s.step_bound)},
                     {"within_step_bound", s.within_step_bound}});
  }
  return {{"format", "matching"},
          {"n", m.n},
          {"config",
           {{"d", m.config.d},
            {"c2", m.config.c2},
            {"c3", m.config.c3},
            {"min_n", m.config.min_n},
            {"seed", m.config.seed}}},
          {"delta0", static_cast<double>(m.delta0)},
          {"span_limit", m.span_limit},
          {"target_pairs", m.target_pairs},
          {"refined_parts", m.refined_parts},
          {"pairs", std::move(pairs)},
          {"X", m.leftover},
          {"kappa", std::move(kappa)},
          {"trace", std::move(trace)}};
}

LowStabMatching matching_from_json(const json& j) {
  const std::string where = "matching";
  check_object(j,
               {"format", "n", "config", "delta0", "span_limit", "target_pairs", "refined_parts",
                "pairs", "X", "kappa", "trace"},
               where);
  expect_format(j, "matching", where);
  LowStabMatching m;
  m.n = field<std::size_t>(j, "n", where);
  if (j.contains("config")) {
    const json& c = j.at("config");
    check_object(c, {"d", "c2", "c3", "min_n", "seed"}, where + ".config");
    m.config.d = optional_field<unsigned>(c, "d", where).value_or(m.config.d);
    m.config.c2 = optional_field<double>(c, "c2", where).value_or(m.config.c2);
    m.config.c3 = optional_field<double>(c, "c3", where).value_or(m.config.c3);
    m.config.min_n = optional_field<std::size_t>(c, "min_n", where).value_or(m.config.min_n);
    m.config.seed = optional_field<std::uint64_t>(c, "seed", where).value_or(m.config.seed);
  }
  m.delta0 = optional_field<double>(j, "delta0", where).value_or(0);
  m.span_limit = optional_field<std::uint64_t>(j, "span_limit", where).value_or(0);
  m.target_pairs = optional_field<std::uint64_t>(j, "target_pairs", where).value_or(0);
  m.refined_parts = optional_field<std::size_t>(j, "refined_parts", where).value_or(0);
  const json& ps = j.contains("pairs") ? j.at("pairs") : json();
  if (!ps.is_array()) throw ParseError(where + ".pairs: expected an array");
  for (std::size_t k = 0; k < ps.size(); ++k) {
    m.pairs.push_back(pair_from(ps[k], where + ".pairs[" + std::to_string(k) + "]"));
  }
  m.leftover = field<std::vector<Vertex>>(j, "X", where);
  if (j.contains("kappa")) {
    const json& ks = j.at("kappa");
    if (!ks.is_object()) throw ParseError(where + ".kappa: expected an object");
    for (const auto& item : ks.items()) {
      m.kappa_keys.push_back(key_from_string(item.key(), where + ".kappa"));
      check_integers<std::uint32_t>(item.value(), where + ".kappa." + item.key());
      try {
        m.kappa.push_back(item.value().get<std::uint32_t>());
      } catch (const json::exception& e) {
        throw ParseError(where + ".kappa." + item.key() + ": " + e.what());
      }
    }
  }
  // The trace is diagnostic output and is not read back.
  return m;
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const MatchingReport& report) {
  return {{"all_passed", report.all_passed()}, {"checks", checks_json(report.checks)}};
}

json to_json(const PipelineReport& r) {
  json phi = json::array();
  for (const auto& [pair, value] : r.phi) phi.push_back({{"pair", pair_json(pair)}, {"phi", value}});
  json m1 = json::array();
  for (const VertexPair& p : r.m1_pairs) m1.push_back(pair_json(p));
  return {{"format", "pipeline-report"},
          {"n", r.n},
          {"root_id", r.root_id},
          {"escape_direction", point_json(r.escape_direction)},
          {"label_ids", r.label_ids},
          {"chosen", pair_json(r.chosen)},
          {"chosen_ids", json::array({r.chosen_ids.first, r.chosen_ids.second})},
          {"crossing_count", r.crossing_count},
          {"bound", static_cast<double>(r.bound)},
          {"passed", r.passed},
          {"fallback", r.fallback},
          {"fallback_reason", r.fallback_reason},
          {"m1_size", r.m1_size},
          {"m1_pairs", std::move(m1)},
          {"leftover", r.leftover},
          {"m2_size", r.m2_size()},
          {"leftover_size", r.leftover_size},
          {"gamma1_arcs", r.gamma1_arcs},
          {"max_kappa", r.max_kappa},
          {"phi", std::move(phi)},
          {"e_sizes", r.e_sizes},
          {"u_sizes", r.u_sizes},
          {"observation1", r.observation1},
          {"matching_report", to_json(r.matching_report)},
          {"diagnostics", checks_json(r.diagnostics)},
          {"runtime_ms", r.runtime_ms}};
}

json to_json(const oracle::OracleReport& r) {
  json per_edge = json::array();
  for (const auto& [ids, count] : r.per_edge_crossings) {
    per_edge.push_back({{"edge", json::array({ids.first, ids.second})}, {"crossings", count}});
  }
  json out{{"format", "oracle-report"},
           {"min_crossing_edge",
            {{"edge", json::array({r.min_crossing_edge.ids.first, r.min_crossing_edge.ids.second})},
             {"crossings", r.min_crossing_edge.count}}},
           {"per_edge_crossings", std::move(per_edge)}};
  if (r.stab_table) {
    json table = json::array();
    for (long double v : *r.stab_table) table.push_back(static_cast<double>(v));
    out["stab_table"] = std::move(table);
  }
  json cells = json::array();
  for (const auto& [m, c] : r.cell_counts) cells.push_back({{"m", m}, {"max_cells", c}});
  out["cell_counts"] = std::move(cells);
  if (r.phi_table) {
    json phi = json::array();
    for (const auto& [pair, value] : *r.phi_table) {
      phi.push_back({{"pair", pair_json(pair)}, {"phi", value}});
    }
    out["phi_table"] = std::move(phi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constants

json to_json(const Constants& c) {
  return {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"c4", c.c4}, {"min_n", c.min_n}};
}

Constants constants_from_json(const json& j) {
  const std::string where = "constants";
  check_object(j, {"c1", "c2", "c3", "c4", "min_n"}, where);
  Constants c = kFittedConstants;
  c.c1 = optional_field<double>(j, "c1", where).value_or(c.c1);
  c.c2 = optional_field<double>(j, "c2", where).value_or(c.c2);
  c.c3 = optional_field<double>(j, "c3", where).value_or(c.c3);
  c.c4 = optional_field<double>(j, "c4", where).value_or(c.c4);
  c.min_n = optional_field<std::size_t>(j, "min_n", where).value_or(c.min_n);
  if (!(c.c1 > 0) || !(c.c4 > 0)) throw ParseError(where + ": c1 and c4 must be positive");
  try {
    match_config(c).validate();
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Files

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

Constants load_constants(const std::filesystem::path& path) {
  return constants_from_json(read_json(path));
}

// ---------------------------------------------------------------------------
// CSV

std::string csv_header() {
  return "n,seed,generator,chosen_i,chosen_j,crossings,bound,e0,e1,e2,e3,e4,m1,m2,max_kappa,"
         "runtime_ms";
}

std::string csv_row(const PipelineReport& r, std::uint64_t seed, const std::string& generator) {
  std::ostringstream os;
  os << r.n << ',' << seed << ',' << generator << ',' << r.chosen.first << ',' << r.chosen.second
     << ',' << r.crossing_count << ',' << format_double(static_cast<double>(r.bound));
  for (std::size_t e : r.e_sizes) os << ',' << e;
  os << ',' << r.m1_size << ',' << r.m2_size() << ',' << r.max_kappa << ','
     << format_double(r.runtime_ms);
  return os.str();
}

}  // namespace shortedge::io
