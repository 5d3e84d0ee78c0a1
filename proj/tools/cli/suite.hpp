#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shortedge/constants.hpp"
#include "shortedge/drawing.hpp"
#include "shortedge/packing_matcher.hpp"
#include "shortedge/set_system.hpp"

namespace shortedge::cli {

enum class CheckStatus { kPass, kFail, kSkip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
};

const char* to_string(CheckStatus status);

struct SuiteOptions {
  Constants constants = kFittedConstants;
  std::optional<std::int64_t> hint;
  // A matching to check instead of a freshly computed one.
  std::optional<LowStabMatching> matching;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t exhaustive_max_m = 3;
  std::size_t sampled_max_m = 6;
  std::uint64_t exhaustive_budget = 100'000'000;
  std::uint64_t samples = 1000;
  std::uint64_t pseudometric_triples = 10'000;
};

std::vector<CheckResult> verify_drawing(const Drawing& drawing, const SuiteOptions& options);
std::vector<CheckResult> verify_family(const SetFamily& family, const SuiteOptions& options);

}  // namespace shortedge::cli
