#include "dinls/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "dinls/error.hpp"
#include "dinls/propagator.hpp"

namespace dinls {

namespace {

double weighted_sum(const RadialGrid& grid, std::span<const Complex> u, double p, double b) {
  const auto r = grid.nodes();
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double a = std::abs(u[j]);
    if (a == 0.0) continue;
    sum += std::pow(r[j], -b) * std::pow(a, p) * w[j];
  }
  return sum;
}

double term_factor(const PowerTerm& term) { return term.coupling / (term.power + 2.0); }

}  // namespace

double mass(const Field& field) {
  const auto w = field.grid().weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < field.size(); ++j) sum += std::norm(field[j]) * w[j];
  return sum;
}

double weighted_norm(const Field& field, double p, double b) {
  const int n = field.grid().dimension();
  if (!(b >= 0.0 && b < n))
    throw Error(ErrorCode::ExponentOutOfRange,
                "0 <= b < N violated: b = " + std::to_string(b) + ", N = " + std::to_string(n));
  if (!(p >= 1.0)) throw Error(ErrorCode::ExponentOutOfRange, "p >= 1 violated: p = " + std::to_string(p));
  return weighted_sum(field.grid(), field.values(), p, b);
}

double kinetic(const Field& field) { return dirichlet_form(field.grid(), field.values()); }

double energy(const Field& field, const PdeModel& model) {
  double e = 0.5 * kinetic(field);
  for (const auto& term : model.terms) {
    if (term.coupling == 0.0) continue;
    e += term_factor(term) * weighted_norm(field, term.power + 2.0, term.weight);
  }
  return e;
}

double energy(const Field& field, const ProblemParams& params) {
  return energy(field, PdeModel::from_params(params));
}

double variance(const Field& field) {
  const auto r = field.grid().nodes();
  const auto w = field.grid().weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < field.size(); ++j) sum += r[j] * r[j] * std::norm(field[j]) * w[j];
  return sum;
}

double variance_tail_fraction(const Field& field) {
  const double total = variance(field);
  if (total == 0.0) return 0.0;
  const std::size_t last = field.size() - 1;
  const double r = field.grid().nodes()[last];
  return r * r * std::norm(field[last]) * field.grid().weights()[last] / total;
}

double virial_y(const Field& field) {
  const auto du = radial_derivative(field);
  const auto r = field.grid().nodes();
  const auto w = field.grid().weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < du.size(); ++j) sum += (std::conj(field[j]) * du[j]).imag() * r[j] * w[j];
  return -sum;
}

double virial_vpp(const Field& field, const PdeModel& model) {
  const int n = model.dimension;
  double v = 8.0 * kinetic(field);
  for (const auto& term : model.terms) {
    if (term.coupling == 0.0) continue;
    v += 4.0 * term.coupling * (n * term.power + 2.0 * term.weight) / (term.power + 2.0) *
         weighted_norm(field, term.power + 2.0, term.weight);
  }
  return v;
}

double virial_vpp(const Field& field, const ProblemParams& params) {
  return virial_vpp(field, PdeModel::from_params(params));
}

double blowup_coefficient(const ProblemParams& params, const RegimeVerdict& verdict, double epsilon) {
  if (!is_blowup(verdict.kind))
    throw Error(ErrorCode::NotABlowupRegime, std::string(to_string(verdict.kind)) + " is not a blow-up case");
  return blowup_constant(params, verdict.kind, epsilon);
}

DiagnosticsSample sample_diagnostics(const Field& field, const PdeModel& model, double dt_used) {
  const auto& grid = field.grid();
  const auto r = grid.nodes();
  const auto w = grid.weights();
  const auto du = radial_derivative(field);
  const int n = model.dimension;

  DiagnosticsSample s;
  s.t = field.time();
  s.dt_used = dt_used;
  double y_sum = 0.0;
  for (std::size_t j = 0; j < field.size(); ++j) {
    const double density = std::norm(field[j]);
    s.mass += density * w[j];
    s.variance += r[j] * r[j] * density * w[j];
    y_sum += (std::conj(field[j]) * du[j]).imag() * r[j] * w[j];
    s.max_amplitude = std::max(s.max_amplitude, std::abs(field[j]));
  }
  s.y = -y_sum;
  s.kinetic = dirichlet_form(grid, field.values());

  double* norms[2] = {&s.weighted_norm_1, &s.weighted_norm_2};
  s.energy = 0.5 * s.kinetic;
  s.vpp_formula = 8.0 * s.kinetic;
  for (int k = 0; k < 2; ++k) {
    const auto& term = model.terms[k];
    *norms[k] = weighted_sum(grid, field.values(), term.power + 2.0, term.weight);
    s.energy += term_factor(term) * *norms[k];
    s.vpp_formula += 4.0 * term.coupling * (n * term.power + 2.0 * term.weight) / (term.power + 2.0) * *norms[k];
  }
  if (s.variance > 0.0) {
    const std::size_t last = field.size() - 1;
    s.tail_fraction = r[last] * r[last] * std::norm(field[last]) * w[last] / s.variance;
  }
  return s;
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticsSeries& series) {
  out << "t,mass,energy,kinetic,wn1,wn2,V,y,vpp_formula,max_amp,dt\n";
  char line[512];
  for (const auto& s : series) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                  s.mass, s.energy, s.kinetic, s.weighted_norm_1, s.weighted_norm_2, s.variance, s.y,
                  s.vpp_formula, s.max_amplitude, s.dt_used);
    out << line;
  }
}

}  // namespace dinls
