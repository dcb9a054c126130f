#include "dinls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dinls/error.hpp"

namespace dinls {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

RadialGrid::RadialGrid(int dimension, double radius, int points)
    : dimension_(dimension),
      radius_(radius),
      spacing_(radius / points),
      sphere_area_(2.0 * std::pow(std::numbers::pi, 0.5 * dimension) / std::tgamma(0.5 * dimension)),
      nodes_(static_cast<std::size_t>(points)),
      weights_(static_cast<std::size_t>(points)) {
  for (int j = 0; j < points; ++j) {
    const double r = (j + 0.5) * spacing_;
    nodes_[j] = r;
    weights_[j] = sphere_area_ * std::pow(r, dimension - 1) * spacing_;
  }
}

GridPtr make_radial_grid(int dimension, double radius, int points) {
  if (dimension < 3 || dimension > 5)
    throw Error(ErrorCode::BadGridSpec, "dimension " + std::to_string(dimension) + " outside {3, 4, 5}");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::BadGridSpec, "domain radius must be positive and finite");
  if (points < 16 || !is_power_of_two(points))
    throw Error(ErrorCode::BadGridSpec, "point count " + std::to_string(points) + " must be a power of two >= 16");
  return std::make_shared<const RadialGrid>(dimension, radius, points);
}

Field::Field(GridPtr grid, std::vector<Complex> values, double time)
    : grid_(std::move(grid)), values_(std::move(values)), time_(time) {
  if (!grid_) throw Error(ErrorCode::PreconditionFailed, "field needs a grid");
  if (values_.size() != static_cast<std::size_t>(grid_->size()))
    throw Error(ErrorCode::LengthMismatch, "field has " + std::to_string(values_.size()) +
                                               " values, grid has " + std::to_string(grid_->size()));
}

Field::Field(GridPtr grid, double time)
    : Field(grid, std::vector<Complex>(grid ? grid->size() : 0), time) {}

bool Field::is_finite() const noexcept {
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double integrate(const RadialGrid& grid, std::span<const double> samples) {
  if (samples.size() != static_cast<std::size_t>(grid.size()))
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(grid.size()) + " samples, got " +
                                               std::to_string(samples.size()));
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (!std::isfinite(samples[j]))
      throw Error(ErrorCode::NonFiniteSample, "sample " + std::to_string(j) + " is not finite");
    sum += samples[j] * w[j];
  }
  return sum;
}

std::vector<Complex> radial_derivative(const RadialGrid& grid, std::span<const Complex> u) {
  const int m = grid.size();
  if (u.size() != static_cast<std::size_t>(m))
    throw Error(ErrorCode::LengthMismatch, "derivative input length differs from grid size");
  const double scale = 1.0 / (12.0 * grid.spacing());
  // u(-r) = u(r): ghost index -1 mirrors 0, -2 mirrors 1.
  auto at = [&](int j) -> const Complex& { return u[j >= 0 ? j : -j - 1]; };
  std::vector<Complex> du(static_cast<std::size_t>(m));
  for (int j = 0; j < m - 2; ++j)
    du[j] = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * u[j + 1] - u[j + 2]) * scale;
  {
    const int j = m - 2;
    du[j] = (3.0 * u[j + 1] + 10.0 * u[j] - 18.0 * u[j - 1] + 6.0 * u[j - 2] - u[j - 3]) * scale;
  }
  {
    const int j = m - 1;
    du[j] = (25.0 * u[j] - 48.0 * u[j - 1] + 36.0 * u[j - 2] - 16.0 * u[j - 3] + 3.0 * u[j - 4]) * scale;
  }
  return du;
}

std::vector<Complex> radial_derivative(const Field& field) {
  return radial_derivative(field.grid(), field.values());
}

std::vector<Complex> to_reduced(const Field& field) {
  const auto r = field.grid().nodes();
  const double k = field.grid().reduction_exponent();
  std::vector<Complex> v(field.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = field[j] * std::pow(r[j], k);
  return v;
}

Field from_reduced(const GridPtr& grid, std::span<const Complex> reduced, double time) {
  const auto r = grid->nodes();
  const double k = grid->reduction_exponent();
  if (reduced.size() != r.size())
    throw Error(ErrorCode::LengthMismatch, "reduced array length differs from grid size");
  std::vector<Complex> u(reduced.size());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = reduced[j] / std::pow(r[j], k);
  return Field(grid, std::move(u), time);
}

std::vector<double> absorbing_mask(const RadialGrid& grid) {
  const double width = grid.radius() / 8.0;
  const double start = grid.radius() - width;
  std::vector<double> mask(static_cast<std::size_t>(grid.size()), 1.0);
  const auto r = grid.nodes();
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (r[j] <= start) continue;
    const double c = std::cos(0.5 * std::numbers::pi * (r[j] - start) / width);
    mask[j] = c * c;
  }
  return mask;
}

}  // namespace dinls
