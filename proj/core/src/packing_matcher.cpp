#include "shortedge/packing_matcher.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "shortedge/errors.hpp"
#include "shortedge/int_math.hpp"

namespace shortedge {

void MatchConfig::validate() const {
  if (d < 2) throw RangeError("match config: d must be >= 2");
  if (!(c2 >= 1.0)) throw RangeError("match config: c2 must be >= 1");
  if (!(c3 >= 2.0 * c2)) throw RangeError("match config: c3 must be >= 2 * c2");
}

std::uint32_t LowStabMatching::max_kappa() const {
  return kappa.empty() ? 0 : *std::max_element(kappa.begin(), kappa.end());
}

bool MatchingReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
}

const BoundCheck* MatchingReport::find(const std::string& name) const {
  for (const BoundCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<Vertex> greedy_net(const SetFamily& family, long double delta) {
  if (!(delta > 0)) throw RangeError("greedy_net: delta must be positive");
  std::vector<Vertex> net;
  const auto n = static_cast<Vertex>(family.ground_size());
  for (Vertex v = 1; v <= n; ++v) {
    const bool separated = std::all_of(net.begin(), net.end(), [&](Vertex u) {
      return stab_count(family, u, v) > delta;
    });
    if (separated) net.push_back(v);
  }
  return net;
}

StabPartition partition_low_stab(const SetFamily& family, long double delta) {
  const std::vector<Vertex> net = greedy_net(family, delta);
  StabPartition partition;
  partition.delta = delta;
  partition.parts.resize(net.size());
  const auto n = static_cast<Vertex>(family.ground_size());
  for (Vertex v = 1; v <= n; ++v) {
    std::size_t k = 0;
    while (k < net.size() && net[k] != v && stab_count(family, net[k], v) > delta) ++k;
    if (k == net.size()) throw std::logic_error("partition_low_stab: net is not maximal");
    partition.parts[k].push_back(v);
  }
  // Same-part pairs are within 2 delta by the triangle inequality through
  // the net vertex; checked here because every later bound rests on it.
  for (const auto& part : partition.parts) {
    for (std::size_t a = 0; a < part.size(); ++a) {
      for (std::size_t b = a + 1; b < part.size(); ++b) {
        if (stab_count(family, part[a], part[b]) > 2 * delta) {
          throw std::logic_error("partition_low_stab: same-part pair exceeds 2 delta");
        }
      }
    }
  }
  return partition;
}

std::vector<Vertex> pigeon_subset(const SetFamily& family, long double delta) {
  const StabPartition partition = partition_low_stab(family, delta);
  const std::vector<Vertex>* best = nullptr;
  for (const auto& part : partition.parts) {
    if (best == nullptr || part.size() > best->size() ||
        (part.size() == best->size() && part.front() < best->front())) {
      best = &part;
    }
  }
  return best == nullptr ? std::vector<Vertex>{} : *best;
}

StabPartition refine_by_index(const StabPartition& partition, long double width) {
  if (!(width >= 1)) throw RangeError("refine_by_index: width must be >= 1");
  StabPartition out;
  out.delta = partition.delta;
  for (auto part : partition.parts) {
    std::sort(part.begin(), part.end());
    std::vector<Vertex> chunk;
    for (Vertex v : part) {
      if (!chunk.empty() && static_cast<long double>(v - chunk.front()) > width) {
        out.parts.push_back(std::move(chunk));
        chunk.clear();
      }
      chunk.push_back(v);
    }
    if (!chunk.empty()) out.parts.push_back(std::move(chunk));
  }
  return out;
}

namespace {

// Current weights 2^kappa(A), kept as one member mask per kappa value so a
// weighted stab count is a handful of masked popcounts.
class KappaLevels {
 public:
  explicit KappaLevels(std::size_t members) : kappa_(members, 0) {
    masks_.emplace_back(members);
    for (std::size_t q = 0; q < members; ++q) masks_[0].set(q);
  }

  StabDistance weighted_stab(const Bitset& iu, const Bitset& iv,
                             std::vector<std::uint64_t>& scratch) const {
    scratch.assign(masks_.size(), 0);
    for (std::size_t k = 0; k < masks_.size(); ++k) {
      scratch[k] = Bitset::xor_count_masked(iu, iv, masks_[k]);
    }
    return StabDistance::from_level_counts(scratch);
  }

  void bump_stabbing(const Bitset& iu, const Bitset& iv) {
    const std::size_t words = iu.word_count();
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = iu.words()[w] ^ iv.words()[w];
      while (word != 0) {
        const std::size_t q = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        const std::uint32_t k = kappa_[q]++;
        if (masks_.size() <= k + 1) masks_.emplace_back(kappa_.size());
        masks_[k].reset(q);
        masks_[k + 1].set(q);
      }
    }
  }

  const std::vector<std::uint32_t>& kappa() const noexcept { return kappa_; }

 private:
  std::vector<std::uint32_t> kappa_;
  std::vector<Bitset> masks_;
};

}  // namespace

LowStabMatching key_matching(const SetFamily& family, const MatchConfig& config) {
  config.validate();
  if (!family.unweighted()) throw PreconditionError("key_matching: input family must be unweighted");
  const std::size_t n = family.ground_size();
  if (n < config.min_n) {
    throw TooSmallError("key_matching: n = " + std::to_string(n) + " below min_n = " +
                        std::to_string(config.min_n));
  }
  const unsigned d = config.d;
  const auto nl = static_cast<long double>(n);
  const long double total = family.total_weight().value();

  LowStabMatching out;
  out.n = n;
  out.config = config;
  out.delta0 = config.c2 * total / std::pow(nl, 1.0L / (2.0L * d));
  out.span_limit = floor_power_ratio(n, 2 * d - 1, 2 * d);
  out.target_pairs = half_minus_root_ceil(n, d + 1, 2 * d);

  // Delta is at least c2 |F| / n^{1/4} > 0 unless the family is empty; an
  // empty family stabs nothing, so any positive delta yields one part.
  const long double delta = out.delta0 > 0 ? out.delta0 : 1.0L;
  const StabPartition refined = refine_by_index(partition_low_stab(family, delta),
                                                static_cast<long double>(out.span_limit));
  out.refined_parts = refined.parts.size();

  std::vector<char> matched(n + 1, 0);
  KappaLevels weights(family.size());
  StabDistance weight = family.total_weight();
  std::vector<std::uint64_t> scratch;

  for (std::uint64_t i = 0; i < out.target_pairs; ++i) {
    std::optional<VertexPair> best;
    StabDistance best_stab;
    for (const auto& part : refined.parts) {
      for (std::size_t a = 0; a < part.size(); ++a) {
        if (matched[part[a]]) continue;
        const Bitset& ia = family.incidence(part[a]);
        for (std::size_t b = a + 1; b < part.size(); ++b) {
          if (matched[part[b]]) continue;
          const StabDistance s = weights.weighted_stab(ia, family.incidence(part[b]), scratch);
          const VertexPair candidate{part[a], part[b]};
          if (!best || s < best_stab || (s == best_stab && candidate < *best)) {
            best = candidate;
            best_stab = s;
          }
        }
      }
    }
    if (!best) {
      throw InfeasiblePartitionError("key_matching: no same-part pair left after " +
                                     std::to_string(i) + " of " +
                                     std::to_string(out.target_pairs) + " pairs (" +
                                     std::to_string(out.refined_parts) + " parts)");
    }
    MatchStep step;
    step.pair = *best;
    step.weighted_stab = best_stab;
    step.weight_before = weight;
    step.step_bound = 2.0L * config.c2 * weight.value() /
                      std::pow(static_cast<long double>(n - 2 * i), 1.0L / d);
    step.within_step_bound = best_stab <= step.step_bound;
    out.trace.push_back(step);

    weights.bump_stabbing(family.incidence(best->first), family.incidence(best->second));
    weight += best_stab;
    matched[best->first] = 1;
    matched[best->second] = 1;
    out.pairs.push_back(*best);
  }

  for (Vertex v = 1; v <= n; ++v) {
    if (!matched[v]) out.leftover.push_back(v);
  }
  out.kappa = weights.kappa();
  out.kappa_keys.reserve(family.size());
  for (const Member& m : family.members()) out.kappa_keys.push_back(m.key);

  for (const VertexPair& p : out.pairs) {
    if (p.second - p.first > out.span_limit) {
      throw std::logic_error("key_matching: pair span exceeds the index-locality limit");
    }
  }
  if (!leq_scaled_root(out.leftover.size(), 2, n, d + 1, 2 * d)) {
    throw std::logic_error("key_matching: leftover set exceeds 2 n^{1/2+1/(2d)}");
  }
  return out;
}

MatchingReport verify_matching(const SetFamily& family, const LowStabMatching& matching,
                               const MatchConfig& config) {
  MatchingReport report;
  const std::size_t n = family.ground_size();
  const unsigned d = config.d;
  const auto nl = static_cast<long double>(n);

  // Pairs and leftover partition the ground set.
  std::vector<int> seen(n + 1, 0);
  std::size_t problems = 0;
  auto touch = [&](Vertex v) {
    if (v < 1 || v > n) {
      ++problems;
      return;
    }
    ++seen[v];
  };
  for (const VertexPair& p : matching.pairs) {
    if (p.first == p.second) ++problems;
    touch(p.first);
    touch(p.second);
  }
  for (Vertex v : matching.leftover) touch(v);
  for (std::size_t v = 1; v <= n; ++v) {
    if (seen[v] != 1) ++problems;
  }
  report.checks.push_back({"partition", 0, static_cast<long double>(problems), problems == 0});

  const std::uint64_t span_limit = floor_power_ratio(n, 2 * d - 1, 2 * d);
  std::uint64_t max_span = 0;
  for (const VertexPair& p : matching.pairs) {
    const Vertex lo = std::min(p.first, p.second);
    const Vertex hi = std::max(p.first, p.second);
    max_span = std::max<std::uint64_t>(max_span, hi - lo);
  }
  report.checks.push_back({"property1_span", static_cast<long double>(span_limit),
                           static_cast<long double>(max_span), max_span <= span_limit});

  const long double total = static_cast<long double>(family.size());
  const long double pair_bound = config.c3 * total / std::pow(nl, 1.0L / (2.0L * d));
  std::size_t max_pair_stab = 0;
  for (const VertexPair& p : matching.pairs) {
    if (p.first == p.second || p.first < 1 || p.second < 1 || p.first > n || p.second > n) continue;
    std::size_t c = 0;
    for (const Member& m : family.members()) {
      c += m.set.contains(p.first) != m.set.contains(p.second);
    }
    max_pair_stab = std::max(max_pair_stab, c);
  }
  report.checks.push_back({"property2_pair_stab", pair_bound,
                           static_cast<long double>(max_pair_stab),
                           static_cast<long double>(max_pair_stab) <= pair_bound});

  std::vector<std::uint32_t> recount(family.size(), 0);
  for (std::size_t q = 0; q < family.size(); ++q) {
    const VertexSet& set = family.member(q).set;
    for (const VertexPair& p : matching.pairs) {
      recount[q] += set.contains(p.first) != set.contains(p.second);
    }
  }
  const std::uint32_t max_kappa =
      recount.empty() ? 0 : *std::max_element(recount.begin(), recount.end());
  const long double kappa_bound = config.c3 * std::pow(nl, 1.0L - 1.0L / d);
  report.checks.push_back({"property3_kappa", kappa_bound, static_cast<long double>(max_kappa),
                           static_cast<long double>(max_kappa) <= kappa_bound});

  const std::size_t leftover = matching.leftover.size();
  report.checks.push_back({"leftover_size", 2.0L * std::pow(nl, 0.5L + 1.0L / (2.0L * d)),
                           static_cast<long double>(leftover),
                           leq_scaled_root(leftover, 2, n, d + 1, 2 * d)});

  std::size_t mismatches = 0;
  if (matching.kappa.size() != family.size() || matching.kappa_keys.size() != family.size()) {
    mismatches = family.size() + 1;
  } else {
    for (std::size_t k = 0; k < matching.kappa.size(); ++k) {
      const auto q = family.find(matching.kappa_keys[k]);
      if (!q || recount[*q] != matching.kappa[k]) ++mismatches;
    }
  }
  report.checks.push_back(
      {"kappa_consistency", 0, static_cast<long double>(mismatches), mismatches == 0});
  return report;
}

}  // namespace shortedge
