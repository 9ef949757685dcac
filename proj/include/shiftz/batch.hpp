#pragma once

#include <vector>

#include "shiftz/block_code.hpp"
#include "shiftz/point.hpp"
#include "shiftz/space.hpp"

namespace shiftz {

enum class Exec { Serial, Parallel };

// True when the library was built with OpenMP.
bool parallel_available();

// contains(h, x) for every point. Both paths give identical results.
std::vector<char> contains_batch(const SpaceHandle& h, const std::vector<BiPoint>& xs, Exec exec = Exec::Parallel);
// sbc_apply(c, x) for every point.
std::vector<BiPoint> apply_batch(const SlidingBlockCode& c, const std::vector<BiPoint>& xs,
                                 Exec exec = Exec::Parallel);

}  // namespace shiftz
