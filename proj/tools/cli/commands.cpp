#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "shortedge/constants.hpp"
#include "shortedge/errors.hpp"
#include "shortedge/generators.hpp"
#include "shortedge/io.hpp"
#include "shortedge/oracle.hpp"
#include "shortedge/short_edge.hpp"
#include "suite.hpp"

namespace shortedge::cli {

namespace {

using io::json;

struct Globals {
  std::uint64_t seed = 0;
  bool json = false;
  unsigned jobs = 1;
  std::string constants_path;
};

struct GenSpec {
  std::string generator;
  std::size_t n = 0;
  std::string output;
};

struct AnalyzeSpec {
  std::string input;
  std::optional<std::int64_t> hint;
  std::string report;
  std::vector<std::string> emit;
  std::string csv;
  std::string label = "input";
};

struct VerifySpec {
  std::string input;
  std::string matching;
  std::optional<std::int64_t> hint;
  std::uint64_t samples = 1000;
  std::uint64_t exhaustive_budget = 100'000'000;
};

struct SweepSpec {
  std::vector<std::size_t> ns;
  std::size_t seeds = 5;
  std::string generator = "random-geometric";
  std::string output;
  std::size_t oracle_guard = oracle::kPhiGuard;
};

Constants load_globals_constants(const Globals& g) {
  if (g.constants_path.empty()) return kFittedConstants;
  return io::load_constants(g.constants_path);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << v;
  return os.str();
}

void append_csv(const std::string& path, const std::string& row, std::ostream& out) {
  if (path.empty()) {
    out << io::kCsvSchema << '\n' << io::csv_header() << '\n' << row << '\n';
    return;
  }
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream file(path, std::ios::app);
  if (!file) throw Error("cannot write " + path);
  if (fresh) file << io::kCsvSchema << '\n' << io::csv_header() << '\n';
  file << row << '\n';
}

// ---------------------------------------------------------------------------

int cmd_gen(const Globals& g, const GenSpec& spec, std::ostream& out, std::ostream& err) {
  const Drawing drawing = generate(spec.generator, spec.n, g.seed);
  const CrossingMatrix crossings = crossing_matrix(drawing);
  const json summary{{"generator", spec.generator},
                     {"seed", g.seed},
                     {"vertices", drawing.vertex_count()},
                     {"edges", drawing.edge_count()},
                     {"crossings", crossings.crossing_pairs()}};
  std::ostream& summary_stream = spec.output.empty() ? err : out;
  if (spec.output.empty()) {
    out << io::to_json(drawing).dump(2) << '\n';
  } else {
    io::write_json(spec.output, io::to_json(drawing));
  }
  if (g.json) {
    summary_stream << summary.dump() << '\n';
  } else {
    summary_stream << "vertices=" << drawing.vertex_count() << " edges=" << drawing.edge_count()
                   << " crossings=" << crossings.crossing_pairs() << '\n';
  }
  return kExitOk;
}

int report_violations(const std::vector<Violation>& violations, bool as_json, std::ostream& out,
                      std::ostream& err) {
  if (as_json) {
    json list = json::array();
    for (const Violation& v : violations) {
      list.push_back({{"kind", to_string(v.kind)}, {"message", v.message}});
    }
    out << json{{"valid", false}, {"violations", std::move(list)}}.dump() << '\n';
  } else {
    err << "invalid drawing: " << violations.size() << " violation(s)\n";
    const std::size_t shown = std::min<std::size_t>(violations.size(), 20);
    for (std::size_t k = 0; k < shown; ++k) {
      err << "  " << to_string(violations[k].kind) << ": " << violations[k].message << '\n';
    }
    if (shown < violations.size()) err << "  ... and " << violations.size() - shown << " more\n";
  }
  return kExitInvalidInput;
}

int cmd_analyze(const Globals& g, const AnalyzeSpec& spec, std::ostream& out, std::ostream& err) {
  const Constants constants = load_globals_constants(g);
  const io::DrawingFile file = io::drawing_from_json(io::read_json(spec.input));
  const std::vector<Violation> violations = validate_simple(file.drawing);
  if (!violations.empty()) return report_violations(violations, g.json, out, err);

  PipelineConfig config = pipeline_config(constants);
  config.hint = spec.hint ? spec.hint : file.outer_vertex;
  config.jobs = g.jobs;
  PipelineReport report;
  try {
    report = select_short_edge(file.drawing, config);
  } catch (const StageError& e) {
    err << "analyze failed in stage " << e.stage() << ": " << e.what() << '\n';
    const bool input_problem = e.stage() == "validate" || e.stage() == "outer_face" ||
                               e.stage() == "relabel";
    return input_problem ? kExitInvalidInput : kExitCheckFailed;
  }

  const json report_json = io::to_json(report);
  if (!spec.report.empty()) io::write_json(spec.report, report_json);
  const bool want_csv = std::find(spec.emit.begin(), spec.emit.end(), "csv") != spec.emit.end();
  const bool want_json =
      g.json || std::find(spec.emit.begin(), spec.emit.end(), "json") != spec.emit.end();
  if (want_csv) append_csv(spec.csv, io::csv_row(report, g.seed, spec.label), out);
  if (want_json) {
    out << report_json.dump() << '\n';
  } else if (!want_csv || !spec.csv.empty()) {
    out << "n=" << report.n << " chosen=(v" << report.chosen.first << ", v" << report.chosen.second
        << ") ids=(" << report.chosen_ids.first << ", " << report.chosen_ids.second
        << ") crossings=" << report.crossing_count << " bound=" << fmt(static_cast<double>(report.bound))
        << (report.passed ? " passed" : " FAILED");
    if (report.fallback) out << " fallback: " << report.fallback_reason;
    out << '\n';
  }
  return report.passed || report.fallback ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const Globals& g, const VerifySpec& spec, std::ostream& out, std::ostream& err) {
  SuiteOptions options;
  options.constants = load_globals_constants(g);
  options.seed = g.seed;
  options.jobs = g.jobs;
  options.hint = spec.hint;
  options.samples = spec.samples;
  options.exhaustive_budget = spec.exhaustive_budget;
  if (!spec.matching.empty()) {
    options.matching = io::matching_from_json(io::read_json(spec.matching));
  }

  const json input = io::read_json(spec.input);
  std::string format;
  if (input.is_object()) {
    if (input.contains("format") && input["format"].is_string()) {
      format = input["format"].get<std::string>();
    } else if (input.contains("vertices")) {
      format = "drawing";
    } else if (input.contains("members")) {
      format = "set-family";
    }
  }
  std::vector<CheckResult> checks;
  if (format == "drawing") {
    const io::DrawingFile file = io::drawing_from_json(input);
    if (!options.hint) options.hint = file.outer_vertex;
    checks = verify_drawing(file.drawing, options);
  } else if (format == "set-family") {
    checks = verify_family(io::family_from_json(input), options);
  } else {
    throw ParseError(spec.input + ": format must be 'drawing' or 'set-family'");
  }

  std::vector<std::string> failed;
  for (const CheckResult& c : checks) {
    if (c.status == CheckStatus::kFail) failed.push_back(c.name);
  }
  if (g.json) {
    json list = json::array();
    for (const CheckResult& c : checks) {
      list.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    }
    out << json{{"passed", failed.empty()}, {"checks", std::move(list)}}.dump() << '\n';
  } else {
    for (const CheckResult& c : checks) {
      out << to_string(c.status) << ' ' << c.name << ": " << c.detail << '\n';
    }
  }
  if (failed.empty()) return kExitOk;
  err << "failed checks:";
  for (const std::string& name : failed) err << ' ' << name;
  err << '\n';
  return kExitCheckFailed;
}

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> crossings;
  std::optional<std::uint64_t> oracle_min;
  double bound = 0;
  bool fallback = false;
  std::string status = "ok";
};

std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << *v;
  return os.str();
}

std::optional<double> median(std::vector<std::uint64_t> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  return k % 2 ? static_cast<double>(values[k / 2])
               : (static_cast<double>(values[k / 2 - 1]) + static_cast<double>(values[k / 2])) / 2;
}

int cmd_sweep(const Globals& g, const SweepSpec& spec, std::ostream& out, std::ostream& /*err*/) {
  const Constants constants = load_globals_constants(g);
  std::vector<SweepRow> rows;
  std::vector<std::size_t> ns = spec.ns;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (std::size_t n : ns) {
    for (std::size_t s = 0; s < spec.seeds; ++s) {
      SweepRow row;
      row.n = n;
      row.seed = g.seed + s;
      rows.push_back(row);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      SweepRow& row = rows[k];
      try {
        const Drawing drawing = generate(spec.generator, row.n + 1, row.seed);
        PipelineConfig config = pipeline_config(constants);
        const PipelineReport report = select_short_edge(drawing, config);
        row.crossings = report.crossing_count;
        row.bound = static_cast<double>(report.bound);
        row.fallback = report.fallback;
        if (!report.passed) row.status = "bound-exceeded";
        if (row.n <= spec.oracle_guard) {
          row.oracle_min = oracle::brute_min_crossing_edge(drawing).count;
        }
      } catch (const std::exception& e) {
        row.status = "error: " + csv_field(e.what());
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(g.jobs, 1, std::max<std::size_t>(rows.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << io::kCsvSchema << "-sweep\n"
      << "row_type,n,seed,generator,crossings_max,crossings_median,oracle_max,oracle_median,bound,"
         "fallback,status\n";
  bool all_ok = true;
  for (std::size_t n : ns) {
    std::vector<std::uint64_t> chosen;
    std::vector<std::uint64_t> oracle_values;
    double bound = 0;
    std::size_t failures = 0;
    std::size_t fallbacks = 0;
    for (const SweepRow& row : rows) {
      if (row.n != n) continue;
      csv << "instance," << row.n << ',' << row.seed << ',' << spec.generator << ','
          << opt(row.crossings) << ',' << opt(row.crossings) << ',' << opt(row.oracle_min) << ','
          << opt(row.oracle_min) << ',' << fmt(row.bound) << ',' << (row.fallback ? 1 : 0) << ','
          << row.status << '\n';
      if (row.crossings) chosen.push_back(*row.crossings);
      if (row.oracle_min) oracle_values.push_back(*row.oracle_min);
      if (row.bound > 0) bound = row.bound;
      if (row.status != "ok") ++failures;
      if (row.fallback) ++fallbacks;
    }
    all_ok = all_ok && failures == 0;
    const auto max_of = [](const std::vector<std::uint64_t>& v) {
      return v.empty() ? std::optional<std::uint64_t>{}
                       : std::optional<std::uint64_t>{*std::max_element(v.begin(), v.end())};
    };
    csv << "aggregate," << n << ",," << spec.generator << ',' << opt(max_of(chosen)) << ','
        << opt(median(chosen)) << ',' << opt(max_of(oracle_values)) << ','
        << opt(median(oracle_values)) << ',' << fmt(bound) << ',' << fallbacks << ','
        << (failures == 0 ? std::string("ok") : std::to_string(failures) + " failed") << '\n';
  }
  if (spec.output.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(spec.output);
    if (!file) throw Error("cannot write " + spec.output);
    file << csv.str();
    if (g.json) {
      out << json{{"rows", rows.size()}, {"output", spec.output}, {"ok", all_ok}}.dump() << '\n';
    } else {
      out << "wrote " << rows.size() << " instance rows to " << spec.output << '\n';
    }
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-crossing edges in complete simple topological graphs"};
  app.name("shortedge");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--json", g.json, "Machine-readable JSON on stdout");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
  app.add_option("--constants", g.constants_path, "Constants file (JSON)")->check(CLI::ExistingFile);

  GenSpec gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a complete straight-line drawing");
  gen_cmd->add_option("--generator", gen.generator, "convex or random-geometric")
      ->required()
      ->check(CLI::IsMember({"convex", "random-geometric"}));
  gen_cmd->add_option("--n", gen.n, "Number of vertices")->required()->check(CLI::Range(3, 100000));
  gen_cmd->add_option("-o,--output", gen.output, "Output file (stdout when omitted)");

  AnalyzeSpec analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Select a short edge of a drawing");
  analyze_cmd->add_option("input", analyze.input, "Drawing JSON")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--hint", analyze.hint, "Outer-face vertex id for curved drawings");
  analyze_cmd->add_option("-o,--report", analyze.report, "Write the report JSON here");
  analyze_cmd->add_option("--emit", analyze.emit, "Extra outputs: json, csv")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze_cmd->add_option("--csv", analyze.csv, "Append the CSV row to this file");
  analyze_cmd->add_option("--label", analyze.label, "Generator column of the CSV row");

  VerifySpec verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_option("input", verify.input, "Drawing or set-family JSON")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--matching", verify.matching, "Matching JSON to check")
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--hint", verify.hint, "Outer-face vertex id for curved drawings");
  verify_cmd->add_option("--samples", verify.samples, "Sampled subfamilies per m > 3");
  verify_cmd->add_option("--exhaustive-budget", verify.exhaustive_budget,
                         "Largest subfamily count enumerated exhaustively");

  SweepSpec sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run analyze over a grid of sizes and seeds");
  sweep_cmd->add_option("--n", sweep.ns, "Labeled vertex counts (drawings get n + 1 vertices)")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(2, 100000));
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seeds per size, starting at --seed");
  sweep_cmd->add_option("--generator", sweep.generator, "convex or random-geometric")
      ->check(CLI::IsMember({"convex", "random-geometric"}));
  sweep_cmd->add_option("-o,--output", sweep.output, "CSV output file (stdout when omitted)");
  sweep_cmd->add_option("--oracle-guard", sweep.oracle_guard, "Largest n given an oracle column");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*gen_cmd) return cmd_gen(g, gen, out, err);
    if (*analyze_cmd) return cmd_analyze(g, analyze, out, err);
    if (*verify_cmd) return cmd_verify(g, verify, out, err);
    if (*sweep_cmd) return cmd_sweep(g, sweep, out, err);
  } catch (const ParseError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const RangeError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitInvalidInput;
}

}  // namespace shortedge::cli
