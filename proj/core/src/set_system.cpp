#include "shortedge/set_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "shortedge/errors.hpp"
#include "shortedge/int_math.hpp"
#include "shortedge/random.hpp"

namespace shortedge {

// ---------------------------------------------------------------------------
// StabDistance

StabDistance StabDistance::from_count(std::uint64_t count) {
  StabDistance d(static_cast<long double>(count), 0);
  d.normalize();
  return d;
}

StabDistance StabDistance::power_of_two(std::int64_t exponent) { return {1.0L, exponent}; }

StabDistance StabDistance::from_level_counts(std::span<const std::uint64_t> counts) {
  std::int64_t top = -1;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] != 0) top = static_cast<std::int64_t>(l);
  }
  if (top < 0) return {};
  long double scaled = 0;
  for (std::size_t l = 0; l <= static_cast<std::size_t>(top); ++l) {
    if (counts[l] == 0) continue;
    scaled += std::ldexp(static_cast<long double>(counts[l]),
                         static_cast<int>(static_cast<std::int64_t>(l) - top));
  }
  StabDistance d(scaled, top);
  d.normalize();
  return d;
}

void StabDistance::normalize() noexcept {
  if (scaled_ == 0) {
    exponent_ = 0;
    return;
  }
  constexpr long double kLimit = 18446744073709551616.0L;  // 2^64
  while (scaled_ >= kLimit) {
    scaled_ = std::ldexp(scaled_, -32);
    exponent_ += 32;
  }
}

long double StabDistance::value() const noexcept {
  if (scaled_ == 0) return 0;
  if (exponent_ > std::numeric_limits<long double>::max_exponent) {
    return std::numeric_limits<long double>::infinity();
  }
  return std::ldexp(scaled_, static_cast<int>(exponent_));
}

long double StabDistance::log2() const noexcept {
  if (scaled_ == 0) return -std::numeric_limits<long double>::infinity();
  return std::log2(scaled_) + static_cast<long double>(exponent_);
}

StabDistance StabDistance::operator+(const StabDistance& other) const noexcept {
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  const std::int64_t top = std::max(exponent_, other.exponent_);
  const long double sum =
      std::ldexp(scaled_, static_cast<int>(std::max<std::int64_t>(exponent_ - top, -20000))) +
      std::ldexp(other.scaled_,
                 static_cast<int>(std::max<std::int64_t>(other.exponent_ - top, -20000)));
  StabDistance d(sum, top);
  d.normalize();
  return d;
}

std::partial_ordering operator<=>(const StabDistance& a, const StabDistance& b) noexcept {
  if (a.is_zero() || b.is_zero()) return a.scaled_ <=> b.scaled_;
  const std::int64_t top = std::max(a.exponent_, b.exponent_);
  const long double sa =
      std::ldexp(a.scaled_, static_cast<int>(std::max<std::int64_t>(a.exponent_ - top, -20000)));
  const long double sb =
      std::ldexp(b.scaled_, static_cast<int>(std::max<std::int64_t>(b.exponent_ - top, -20000)));
  return sa <=> sb;
}

std::partial_ordering operator<=>(const StabDistance& a, long double b) noexcept {
  if (a.is_zero()) return 0.0L <=> b;
  if (b <= 0) return std::partial_ordering::greater;
  if (a.exponent_ > std::numeric_limits<long double>::max_exponent - 70) {
    return a.log2() <=> std::log2(b);
  }
  return a.value() <=> b;
}

// ---------------------------------------------------------------------------
// SetFamily

SetFamily::SetFamily(std::size_t n, std::vector<Member> members)
    : n_(n), members_(std::move(members)) {
  for (const Member& m : members_) {
    if (m.set.ground_size() != n_) {
      throw RangeError("member (" + std::to_string(m.key.first) + "," +
                       std::to_string(m.key.second) + ") has ground size " +
                       std::to_string(m.set.ground_size()) + ", expected " + std::to_string(n_));
    }
  }
  build_index();
}

SetFamily SetFamily::from_sets(std::size_t n, const std::vector<std::vector<Vertex>>& sets) {
  std::vector<Member> members;
  members.reserve(sets.size());
  for (std::size_t q = 0; q < sets.size(); ++q) {
    members.push_back({MemberKey{0, static_cast<std::uint32_t>(q + 1)}, VertexSet(n, sets[q]), 0});
  }
  return SetFamily(n, std::move(members));
}

void SetFamily::build_index() {
  key_index_.clear();
  key_index_.reserve(members_.size());
  for (std::size_t q = 0; q < members_.size(); ++q) key_index_.emplace_back(members_[q].key, q);
  std::sort(key_index_.begin(), key_index_.end());
  for (std::size_t q = 1; q < key_index_.size(); ++q) {
    if (key_index_[q].first == key_index_[q - 1].first) {
      throw KeyError("duplicate member key (" + std::to_string(key_index_[q].first.first) + "," +
                     std::to_string(key_index_[q].first.second) + ")");
    }
  }

  incidence_.assign(n_, Bitset(members_.size()));
  std::map<std::uint32_t, Bitset> by_weight;
  for (std::size_t q = 0; q < members_.size(); ++q) {
    for (Vertex v : members_[q].set.to_vector()) incidence_[v - 1].set(q);
    auto [it, inserted] = by_weight.try_emplace(members_[q].log_weight, members_.size());
    it->second.set(q);
  }
  levels_.clear();
  for (auto& [w, bits] : by_weight) levels_.push_back({w, std::move(bits)});
}

std::optional<std::size_t> SetFamily::find(MemberKey key) const {
  auto it = std::lower_bound(key_index_.begin(), key_index_.end(), key,
                             [](const auto& entry, MemberKey k) { return entry.first < k; });
  if (it == key_index_.end() || it->first != key) return std::nullopt;
  return it->second;
}

std::size_t SetFamily::index_of(MemberKey key) const {
  if (auto q = find(key)) return *q;
  throw KeyError("unknown member key (" + std::to_string(key.first) + "," +
                 std::to_string(key.second) + ")");
}

bool SetFamily::unweighted() const noexcept {
  return std::all_of(members_.begin(), members_.end(),
                     [](const Member& m) { return m.log_weight == 0; });
}

StabDistance SetFamily::total_weight() const {
  std::vector<std::uint64_t> counts;
  for (const WeightLevel& level : levels_) {
    if (counts.size() <= level.log_weight) counts.resize(level.log_weight + 1, 0);
    counts[level.log_weight] += level.members.count();
  }
  return StabDistance::from_level_counts(counts);
}

SetFamily SetFamily::reweighted(std::span<const std::uint32_t> log_weights) const {
  if (log_weights.size() != members_.size()) {
    throw RangeError("reweighted: expected " + std::to_string(members_.size()) + " weights, got " +
                     std::to_string(log_weights.size()));
  }
  std::vector<Member> members = members_;
  for (std::size_t q = 0; q < members.size(); ++q) members[q].log_weight = log_weights[q];
  return SetFamily(n_, std::move(members));
}

// ---------------------------------------------------------------------------
// Operations

namespace {

void check_pair(std::size_t n, Vertex u, Vertex v) {
  if (u == v) throw InvalidPairError("pair {v_" + std::to_string(u) + ", v_" + std::to_string(v) +
                                     "} is not a pair of distinct vertices");
  if (u < 1 || v < 1 || u > n || v > n) {
    throw RangeError("pair {v_" + std::to_string(u) + ", v_" + std::to_string(v) +
                     "} outside ground set of size " + std::to_string(n));
  }
}

}  // namespace

bool stabs(const VertexSet& a, Vertex u, Vertex v) {
  check_pair(a.ground_size(), u, v);
  return a.contains(u) != a.contains(v);
}

StabDistance stab_count(const SetFamily& family, Vertex u, Vertex v) {
  check_pair(family.ground_size(), u, v);
  const Bitset& iu = family.incidence(u);
  const Bitset& iv = family.incidence(v);
  auto levels = family.levels();
  if (levels.size() == 1 && levels.front().log_weight == 0) {
    return StabDistance::from_count(Bitset::xor_count(iu, iv));
  }
  std::vector<std::uint64_t> counts;
  for (const WeightLevel& level : levels) {
    const std::size_t c = Bitset::xor_count_masked(iu, iv, level.members);
    if (c == 0) continue;
    if (counts.size() <= level.log_weight) counts.resize(level.log_weight + 1, 0);
    counts[level.log_weight] += c;
  }
  return StabDistance::from_level_counts(counts);
}

std::size_t unweighted_stab_count(const SetFamily& family, Vertex u, Vertex v) {
  check_pair(family.ground_size(), u, v);
  return Bitset::xor_count(family.incidence(u), family.incidence(v));
}

namespace {

// Venn refinement over raw bit words. Cells are stored back to back, each
// `words` long.
class CellRefiner {
 public:
  explicit CellRefiner(std::size_t ground) : ground_(ground), words_((ground + 63) / 64) {}

  std::vector<std::uint64_t> root() const {
    std::vector<std::uint64_t> cell(words_, ~std::uint64_t{0});
    if (ground_ == 0) return {};
    if (ground_ % 64 != 0) cell.back() = (std::uint64_t{1} << (ground_ % 64)) - 1;
    return cell;
  }

  std::size_t words() const noexcept { return words_; }

  void refine(const std::vector<std::uint64_t>& cells, const std::uint64_t* set,
              std::vector<std::uint64_t>& out) const {
    out.clear();
    const std::size_t count = cells.size() / std::max<std::size_t>(words_, 1);
    std::vector<std::uint64_t> in_part(words_), out_part(words_);
    for (std::size_t c = 0; c < count; ++c) {
      const std::uint64_t* cell = cells.data() + c * words_;
      bool any_in = false;
      bool any_out = false;
      for (std::size_t w = 0; w < words_; ++w) {
        in_part[w] = cell[w] & set[w];
        out_part[w] = cell[w] & ~set[w];
        any_in |= in_part[w] != 0;
        any_out |= out_part[w] != 0;
      }
      if (any_in) out.insert(out.end(), in_part.begin(), in_part.end());
      if (any_out) out.insert(out.end(), out_part.begin(), out_part.end());
    }
  }

  std::size_t count_split(const std::vector<std::uint64_t>& cells, const std::uint64_t* set) const {
    std::size_t total = 0;
    const std::size_t count = cells.size() / std::max<std::size_t>(words_, 1);
    for (std::size_t c = 0; c < count; ++c) {
      const std::uint64_t* cell = cells.data() + c * words_;
      bool any_in = false;
      bool any_out = false;
      for (std::size_t w = 0; w < words_; ++w) {
        any_in |= (cell[w] & set[w]) != 0;
        any_out |= (cell[w] & ~set[w]) != 0;
      }
      total += static_cast<std::size_t>(any_in) + static_cast<std::size_t>(any_out);
    }
    return total;
  }

 private:
  std::size_t ground_;
  std::size_t words_;
};

std::size_t cells_of_indices(const SetFamily& family, std::span<const std::size_t> indices) {
  CellRefiner refiner(family.ground_size());
  std::vector<std::uint64_t> cells = refiner.root();
  std::vector<std::uint64_t> next;
  for (std::size_t q : indices) {
    refiner.refine(cells, family.member(q).set.bits().words(), next);
    cells.swap(next);
  }
  return cells.size() / std::max<std::size_t>(refiner.words(), 1);
}

}  // namespace

std::size_t venn_cells(const SetFamily& family, std::span<const MemberKey> keys) {
  if (keys.empty()) throw RangeError("venn_cells: need at least one member");
  std::vector<std::size_t> indices;
  indices.reserve(keys.size());
  for (MemberKey k : keys) indices.push_back(family.index_of(k));
  return cells_of_indices(family, indices);
}

ShatterEstimate dual_shatter_estimate(const SetFamily& family, std::size_t m,
                                      std::uint64_t budget, std::uint64_t seed) {
  const std::size_t count = family.size();
  if (m < 1 || m > count) {
    throw RangeError("dual_shatter_estimate: m = " + std::to_string(m) + " outside [1, " +
                     std::to_string(count) + "]");
  }
  ShatterEstimate est;
  std::vector<std::size_t> best;
  const std::uint64_t combos = binomial_capped(count, m, budget == UINT64_MAX ? budget : budget + 1);

  if (combos <= budget) {
    est.exhaustive = true;
    CellRefiner refiner(family.ground_size());
    std::vector<std::vector<std::uint64_t>> stack(m);
    stack[0] = refiner.root();
    std::vector<std::size_t> chosen(m);
    // Depth-first over increasing index tuples; stack[k] holds the cells of
    // the first k chosen members, and the last member is only counted.
    auto recurse = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
      if (depth + 1 == m) {
        for (std::size_t q = start; q < count; ++q) {
          const std::size_t cells =
              refiner.count_split(stack[depth], family.member(q).set.bits().words());
          ++est.subfamilies_examined;
          if (cells > est.max_cells) {
            est.max_cells = cells;
            chosen[depth] = q;
            best = chosen;
          }
        }
        return;
      }
      for (std::size_t q = start; q + (m - depth) <= count; ++q) {
        chosen[depth] = q;
        refiner.refine(stack[depth], family.member(q).set.bits().words(), stack[depth + 1]);
        self(self, depth + 1, q + 1);
      }
    };
    recurse(recurse, 0, 0);
  } else {
    Rng rng(seed);
    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::uint64_t s = 0; s < budget; ++s) {
      for (std::size_t i = 0; i < m; ++i) {
        std::swap(perm[i], perm[i + uniform_below(rng, count - i)]);
      }
      std::span<const std::size_t> pick(perm.data(), m);
      const std::size_t cells = cells_of_indices(family, pick);
      ++est.subfamilies_examined;
      if (cells > est.max_cells) {
        est.max_cells = cells;
        best.assign(pick.begin(), pick.end());
      }
    }
  }
  for (std::size_t q : best) est.witness.push_back(family.member(q).key);
  return est;
}

std::uint64_t sauer_shelah_bound(std::uint64_t d_star, std::uint64_t m) {
  std::uint64_t total = 0;
  const std::uint64_t top = std::min(d_star, m);
  for (std::uint64_t i = 0; i <= top; ++i) {
    const std::uint64_t term = binomial(m, i);
    if (total > std::numeric_limits<std::uint64_t>::max() - term) {
      throw RangeError("sauer_shelah_bound overflows 64 bits");
    }
    total += term;
  }
  return total;
}

bool is_delta_separated(const SetFamily& family, std::span<const Vertex> xs, long double delta) {
  if (delta <= 0) return true;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      if (xs[a] == xs[b]) return false;
      if (stab_count(family, xs[a], xs[b]) < delta) return false;
    }
  }
  return true;
}

}  // namespace shortedge
