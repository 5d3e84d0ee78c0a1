// Fits the constants c1, c3 and c4 once on held-out seeds and writes them
// out for freezing into constants.hpp. The protocol is fixed in advance:
//
//   instances  random-geometric K_{n+1} for seeds 1001..1020 and the convex
//              K_{n+1}, for n in {32, 64, 128}
//   c2         1 (the smallest value the matching accepts)
//   c1         max |N| / (W/delta)^2 over delta = W * {0.5, 0.2, 0.1, 0.05,
//              0.02, 0.01, 0.005}
//   c3         max of (max pair stab) / (|F| / n^{1/4}) and
//              max kappa / n^{1/2}; at least 2 c2
//   c4         max crossing count / n^{7/4}
//
// Each fitted value is the observed maximum times 1.25, rounded up to two
// significant digits.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "shortedge/constants.hpp"
#include "shortedge/generators.hpp"
#include "shortedge/io.hpp"

namespace {

using namespace shortedge;

constexpr double kHeadroom = 1.25;
constexpr std::uint64_t kFirstSeed = 1001;
constexpr std::uint64_t kSeedCount = 20;
constexpr std::size_t kSizes[] = {32, 64, 128};
constexpr long double kDeltaFractions[] = {0.5L, 0.2L, 0.1L, 0.05L, 0.02L, 0.01L, 0.005L};

struct Instance {
  std::string generator;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double c1 = 0;
  double c3_pair = 0;
  double c3_kappa = 0;
  double c4 = 0;
  std::string error;
};

double round_up(double v) {
  if (v <= 0) return 0;
  const double inverse = std::pow(10.0, 1 - std::floor(std::log10(v)));
  return std::ceil(v * inverse - 1e-9) / inverse;
}

void measure(Instance& inst) {
  const Drawing drawing = generate(inst.generator, inst.n + 1, inst.seed);
  const OuterVertex outer = outer_face_vertex(drawing);
  const RotationLabeling labels = relabel_ccw(drawing, outer.vertex, outer.escape_direction);
  const SetFamily family = triangle_family(drawing, labels);
  const auto n = static_cast<long double>(inst.n);
  const long double w = family.total_weight().value();

  for (long double fraction : kDeltaFractions) {
    const long double delta = w * fraction;
    const auto net = greedy_net(family, delta);
    const long double scale = (w / delta) * (w / delta);
    inst.c1 = std::max(inst.c1, static_cast<double>(net.size() / scale));
  }

  MatchConfig config;
  config.c2 = 1.0;
  const LowStabMatching matching = key_matching(family, config);
  std::size_t worst_pair = 0;
  for (const VertexPair& p : matching.pairs) {
    worst_pair = std::max(worst_pair, unweighted_stab_count(family, p.first, p.second));
  }
  if (w > 0) {
    inst.c3_pair = static_cast<double>(worst_pair / (w / std::pow(n, 0.25L)));
  }
  inst.c3_kappa = static_cast<double>(matching.max_kappa() / std::sqrt(n));

  PipelineConfig pipeline;
  pipeline.match = config;
  const PipelineReport report = select_short_edge(drawing, pipeline);
  inst.c4 = static_cast<double>(report.crossing_count / std::pow(n, 1.75L));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit the bound constants on held-out instances"};
  std::string out_dir = "data";
  unsigned jobs = 1;
  app.add_option("-o,--output-dir", out_dir, "Directory for fitted_constants.json and fit_run.json");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 256U));
  CLI11_PARSE(app, argc, argv);

  std::vector<Instance> instances;
  for (std::size_t n : kSizes) {
    Instance convex;
    convex.generator = "convex";
    convex.n = n;
    instances.push_back(convex);
    for (std::uint64_t s = 0; s < kSeedCount; ++s) {
      Instance random;
      random.generator = "random-geometric";
      random.n = n;
      random.seed = kFirstSeed + s;
      instances.push_back(random);
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < instances.size(); k = next++) {
      try {
        measure(instances[k]);
      } catch (const std::exception& e) {
        instances[k].error = e.what();
      }
      std::lock_guard lock(log_mutex);
      const Instance& i = instances[k];
      std::cerr << i.generator << " n=" << i.n << " seed=" << i.seed << " c1=" << i.c1
                << " c3=" << std::max(i.c3_pair, i.c3_kappa) << " c4=" << i.c4
                << (i.error.empty() ? "" : " error: " + i.error) << '\n';
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  double c1 = 0, c3 = 0, c4 = 0;
  io::json runs = io::json::array();
  for (const Instance& i : instances) {
    if (!i.error.empty()) {
      std::cerr << "fit aborted: " << i.generator << " n=" << i.n << " seed=" << i.seed << ": "
                << i.error << '\n';
      return 1;
    }
    c1 = std::max(c1, i.c1);
    c3 = std::max({c3, i.c3_pair, i.c3_kappa});
    c4 = std::max(c4, i.c4);
    runs.push_back({{"generator", i.generator},
                    {"n", i.n},
                    {"seed", i.seed},
                    {"c1", i.c1},
                    {"c3_pair", i.c3_pair},
                    {"c3_kappa", i.c3_kappa},
                    {"c4", i.c4}});
  }

  Constants fitted;
  fitted.c2 = 1.0;
  fitted.c1 = round_up(c1 * kHeadroom);
  fitted.c3 = std::max(2 * fitted.c2, round_up(c3 * kHeadroom));
  fitted.c4 = round_up(c4 * kHeadroom);
  if (fitted.c1 <= 0 || fitted.c4 <= 0) {
    std::cerr << "fit produced a non-positive constant\n";
    return 1;
  }

  io::write_json(out_dir + "/fitted_constants.json", io::to_json(fitted));
  io::write_json(out_dir + "/fit_run.json",
                 {{"headroom", kHeadroom},
                  {"observed", {{"c1", c1}, {"c3", c3}, {"c4", c4}}},
                  {"fitted", io::to_json(fitted)},
                  {"instances", std::move(runs)}});
  std::cout << io::to_json(fitted).dump() << '\n';
  return 0;
}
