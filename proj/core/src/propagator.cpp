#include "dinls/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "dinls/error.hpp"

namespace dinls {

namespace {

// The FFTW planner is not re-entrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_interleaved(int m, double* buffer, fftw_r2r_kind kind) {
  const int n[1] = {m};
  const fftw_r2r_kind kinds[1] = {kind};
  std::lock_guard lock(planner_mutex());
  // Real and imaginary parts are two interleaved transforms (stride 2, distance 1).
  // FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding, fixed
  // from run to run.
  return fftw_plan_many_r2r(1, n, 2, buffer, nullptr, 2, 1, buffer, nullptr, 2, 1, kinds,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
}

// Forward DST-II on one interleaved complex buffer, reused per thread.
struct ForwardTransform {
  std::vector<Complex> buffer;
  fftw_plan plan = nullptr;

  explicit ForwardTransform(int m) : buffer(static_cast<std::size_t>(m)) {
    plan = plan_interleaved(m, reinterpret_cast<double*>(buffer.data()), FFTW_RODFT10);
    if (!plan) throw Error(ErrorCode::PreconditionFailed, "FFTW planning failed");
  }
  ~ForwardTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  ForwardTransform(const ForwardTransform&) = delete;
  ForwardTransform& operator=(const ForwardTransform&) = delete;
};

ForwardTransform& forward_transform(int m) {
  thread_local std::map<int, std::unique_ptr<ForwardTransform>> cache;
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<ForwardTransform>(m);
  return *slot;
}

}  // namespace

struct LinearPropagator::Impl {
  GridPtr grid;
  std::vector<double> k2;
  std::vector<double> power;  // r_j^{(N-1)/2}
  std::vector<Complex> work;
  std::vector<Complex> phases;
  double cached_dt = std::numeric_limits<double>::quiet_NaN();
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

LinearPropagator::LinearPropagator(GridPtr grid) : impl_(std::make_unique<Impl>()) {
  if (!grid) throw Error(ErrorCode::PreconditionFailed, "propagator needs a grid");
  const int m = grid->size();
  impl_->grid = std::move(grid);
  impl_->k2.resize(static_cast<std::size_t>(m));
  impl_->power.resize(static_cast<std::size_t>(m));
  impl_->work.resize(static_cast<std::size_t>(m));
  impl_->phases.resize(static_cast<std::size_t>(m));
  const double radius = impl_->grid->radius();
  const double exponent = impl_->grid->reduction_exponent();
  const auto r = impl_->grid->nodes();
  for (int j = 0; j < m; ++j) {
    const double k = std::numbers::pi * (j + 1) / radius;
    impl_->k2[j] = k * k;
    impl_->power[j] = std::pow(r[j], exponent);
  }
  auto* buffer = reinterpret_cast<double*>(impl_->work.data());
  impl_->forward = plan_interleaved(m, buffer, FFTW_RODFT10);
  impl_->backward = plan_interleaved(m, buffer, FFTW_RODFT01);
  if (!impl_->forward || !impl_->backward) throw Error(ErrorCode::PreconditionFailed, "FFTW planning failed");
}

LinearPropagator::~LinearPropagator() = default;
LinearPropagator::LinearPropagator(LinearPropagator&&) noexcept = default;
LinearPropagator& LinearPropagator::operator=(LinearPropagator&&) noexcept = default;

const GridPtr& LinearPropagator::grid() const noexcept { return impl_->grid; }

std::span<const double> LinearPropagator::squared_wavenumbers() const noexcept { return impl_->k2; }

void LinearPropagator::apply(std::span<Complex> values, double dt) {
  auto& s = *impl_;
  const std::size_t m = s.work.size();
  if (values.size() != m) throw Error(ErrorCode::LengthMismatch, "propagator input length differs from grid size");
  if (dt == 0.0) return;

  if (dt != s.cached_dt) {
    const double norm = 1.0 / (2.0 * static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k) s.phases[k] = std::polar(norm, -s.k2[k] * dt);
    s.cached_dt = dt;
  }

  for (std::size_t j = 0; j < m; ++j) s.work[j] = values[j] * s.power[j];
  auto* buffer = reinterpret_cast<double*>(s.work.data());
  fftw_execute_r2r(s.forward, buffer, buffer);
  for (std::size_t k = 0; k < m; ++k) s.work[k] *= s.phases[k];
  fftw_execute_r2r(s.backward, buffer, buffer);
  for (std::size_t j = 0; j < m; ++j) values[j] = s.work[j] / s.power[j];
}

Field LinearPropagator::apply(const Field& field, double dt) {
  Field out = field;
  apply(out.values(), dt);
  out.set_time(field.time() + dt);
  return out;
}

Field linear_substep(const Field& field, double dt) {
  LinearPropagator propagator(field.grid_ptr());
  return propagator.apply(field, dt);
}

double dirichlet_form(const RadialGrid& grid, std::span<const Complex> values) {
  const int m = grid.size();
  if (values.size() != static_cast<std::size_t>(m))
    throw Error(ErrorCode::LengthMismatch, "field length differs from grid size");
  const auto r = grid.nodes();
  const double exponent = grid.reduction_exponent();
  const double c = grid.centrifugal_constant();
  const double dr = grid.spacing();

  auto& t = forward_transform(m);
  double potential = 0.0;
  for (int j = 0; j < m; ++j) {
    t.buffer[j] = values[j] * std::pow(r[j], exponent);
    if (c != 0.0) potential += std::norm(t.buffer[j]) / (r[j] * r[j]) * dr;
  }
  fftw_execute_r2r(t.plan, reinterpret_cast<double*>(t.buffer.data()), reinterpret_cast<double*>(t.buffer.data()));

  // Mode amplitude a_k = Y_k / M (Y_k / 2M for the last mode); each sine mode
  // contributes k^2 |a_k|^2 R / 2 to int |v'|^2.
  const double radius = grid.radius();
  double gradient = 0.0;
  for (int k = 0; k < m; ++k) {
    const double wavenumber = std::numbers::pi * (k + 1) / radius;
    const double scale = k == m - 1 ? 0.5 / m : 1.0 / m;
    gradient += wavenumber * wavenumber * std::norm(t.buffer[k]) * scale * scale;
  }
  return grid.sphere_area() * (0.5 * radius * gradient + c * potential);
}

}  // namespace dinls
