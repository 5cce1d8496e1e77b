#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morreykit/grid.hpp"

namespace morreykit {

/// Smooth compactly supported profile exp(1 - 1/(1 - u^2)) for
/// u = |x - center| / width < 1, peak value 1.
GridFunction sample_bump(const Grid& grid, Vec center, double width);

GridFunction sample_indicator(const Grid& grid, const Ball& ball);

/// Trigonometric polynomial with coefficients drawn from the counter-based
/// generator, scaled so the sup norm is at most 1.
GridFunction sample_bandlimited(const Grid& grid, std::uint64_t seed,
                                std::uint64_t stream, int cutoff);

GridFunction sample_log_abs(const Grid& grid);

GridFunction sample_linear(const Grid& grid, double slope = 1.0);

/// Deterministic mix of bumps, indicators and band-limited draws, one stream
/// per index.
std::vector<GridFunction> seeded_test_family(const Grid& grid, std::uint64_t seed,
                                             int count);

}  // namespace morreykit
