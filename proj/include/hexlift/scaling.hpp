#pragma once

#include "hexlift/types.hpp"

namespace hexlift {

/// Throws std::invalid_argument unless n >= 3, every coordinate is finite and
/// each column holds at least two distinct values.
void validate_layout(const RawLayout& raw);

/// Min-shift both axes and divide by the range of the first axis, so column 1
/// spans [0, 1] and column 2 spans [0, r2] with r2 = range2 / range1. When the
/// second axis is the wider one the columns are swapped first (r2 <= 1 after
/// scaling) and `swapped` is set. With preserve_ratio == false each column is
/// divided by its own range and r2 = 1.
ScaledLayout scale_layout(const RawLayout& raw, bool preserve_ratio = true);

}  // namespace hexlift
