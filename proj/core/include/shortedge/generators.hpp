#pragma once

#include <cstdint>
#include <string>

#include "shortedge/drawing.hpp"

namespace shortedge {

// Straight-line complete graph on m points in convex position, ids 0..m-1
// in counterclockwise order starting at the bottom of the circle.
Drawing convex_complete(std::size_t m);

inline constexpr std::int64_t kDefaultBoxSize = 1'000'000;

// Straight-line complete graph on m uniform integer points in
// [0, box)^2 with no three collinear. Throws GenerationError when the
// retry budget runs out.
Drawing random_geometric_complete(std::size_t m, std::uint64_t seed,
                                  std::int64_t box = kDefaultBoxSize);

// "convex" or "random-geometric"; throws RangeError otherwise.
Drawing generate(const std::string& generator, std::size_t m, std::uint64_t seed);

}  // namespace shortedge
