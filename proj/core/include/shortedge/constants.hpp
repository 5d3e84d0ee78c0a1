#pragma once

#include <cstddef>

#include "shortedge/packing_matcher.hpp"
#include "shortedge/short_edge.hpp"

namespace shortedge {

// Constants of the matching and short-edge bounds. The defaults were fitted
// once by tools/fit_constants on seeds disjoint from the test suite and are
// mirrored in data/fitted_constants.json.
struct Constants {
  double c1 = 0.5;    // packing: |N| <= c1 (W / delta)^2
  double c2 = 1.0;    // separation scale of the low-stabbing partition
  double c3 = 2.0;    // matching properties 2 and 3
  double c4 = 0.013;  // short-edge bound c4 n^{7/4}
  std::size_t min_n = 32;

  friend bool operator==(const Constants&, const Constants&) = default;
};

inline constexpr Constants kFittedConstants{};

inline MatchConfig match_config(const Constants& c) {
  MatchConfig m;
  m.c2 = c.c2;
  m.c3 = c.c3;
  m.min_n = c.min_n;
  return m;
}

inline PipelineConfig pipeline_config(const Constants& c) {
  PipelineConfig p;
  p.match = match_config(c);
  p.c4 = c.c4;
  return p;
}

}  // namespace shortedge
