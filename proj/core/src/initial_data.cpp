#include "dinls/initial_data.hpp"

#include <cmath>

#include "dinls/error.hpp"
#include "dinls/observables.hpp"

namespace dinls {

Field chirped_gaussian(const GridPtr& grid, double amplitude, double width, double chirp) {
  if (!(width > 0.0)) throw Error(ErrorCode::PreconditionFailed, "Gaussian width must be positive");
  const auto r = grid->nodes();
  std::vector<Complex> u(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double s = r[j] / width;
    u[j] = amplitude * std::exp(-s * s) * std::polar(1.0, -chirp * r[j] * r[j]);
  }
  return Field(grid, std::move(u));
}

double zero_energy_amplitude(const GridPtr& grid, const PdeModel& model, double width, double chirp, double lo,
                             double hi, double tolerance) {
  auto e = [&](double a) { return energy(chirped_gaussian(grid, a, width, chirp), model); };
  if (!(e(lo) >= 0.0 && e(hi) < 0.0))
    throw Error(ErrorCode::PreconditionFailed, "energy does not change sign on the amplitude bracket");
  while (hi - lo > tolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    (e(mid) < 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace dinls
