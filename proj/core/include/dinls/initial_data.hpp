#pragma once

#include "dinls/grid.hpp"
#include "dinls/model.hpp"

namespace dinls {

/// u0(r) = A exp(-(r/w)^2) exp(-i c r^2). A chirp c > 0 focuses the profile:
/// y0 = 2c V(0) > 0.
Field chirped_gaussian(const GridPtr& grid, double amplitude, double width = 1.0, double chirp = 0.0);

/// Amplitude A* at which E(chirped_gaussian(A)) changes sign, bracketed by
/// bisection on [lo, hi] (E must be >= 0 at lo and < 0 at hi). Throws
/// PreconditionFailed when the bracket does not straddle a sign change.
double zero_energy_amplitude(const GridPtr& grid, const PdeModel& model, double width, double chirp,
                             double lo, double hi, double tolerance = 1e-10);

}  // namespace dinls
