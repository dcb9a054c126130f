#pragma once

#include <iosfwd>
#include <vector>

#include "dinls/grid.hpp"
#include "dinls/model.hpp"
#include "dinls/params.hpp"

namespace dinls {

/// M = int |u|^2 dx.
double mass(const Field& field);

/// int |x|^{-b} |u|^p dx (already raised to the p-th power).
/// Requires 0 <= b < N and p >= 1; throws ExponentOutOfRange.
double weighted_norm(const Field& field, double p, double b);

/// ||grad u||^2 = int |du/dr|^2 dx.
double kinetic(const Field& field);

/// E = kinetic/2 + sum_k lambda_k/(p_k+2) * weighted_norm(u, p_k+2, b_k).
double energy(const Field& field, const PdeModel& model);
double energy(const Field& field, const ProblemParams& params);

/// V = int |x|^2 |u|^2 dx.
double variance(const Field& field);

/// Share of the variance integrand carried by the outermost cell. Above 1e-6
/// the Dirichlet truncation is no longer negligible for V.
double variance_tail_fraction(const Field& field);
inline constexpr double kTailThreshold = 1e-6;

/// y = -Im int conj(u) (grad u . x) dx; the variance obeys V' = -4y.
double virial_y(const Field& field);

/// Right-hand side of V'' = 8 ||grad u||^2 + sum_k 4 lambda_k (N p_k + 2 b_k)/(p_k+2) ||u||^{p_k+2}_{L^{p_k+2}_{b_k}}.
double virial_vpp(const Field& field, const PdeModel& model);
double virial_vpp(const Field& field, const ProblemParams& params);

/// c in y'(t) >= c ||grad u||^2 for the verdict's blow-up case (epsilon for case v).
/// Throws NotABlowupRegime otherwise.
double blowup_coefficient(const ProblemParams& params, const RegimeVerdict& verdict, double epsilon = 0.05);

struct DiagnosticsSample {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;
  double weighted_norm_1 = 0.0;
  double weighted_norm_2 = 0.0;
  double variance = 0.0;
  double y = 0.0;
  double vpp_formula = 0.0;
  double max_amplitude = 0.0;
  double dt_used = 0.0;
  /// Not part of the CSV; lets the solver flag a non-negligible tail.
  double tail_fraction = 0.0;
};

using DiagnosticsSeries = std::vector<DiagnosticsSample>;

/// Every observable at once, sharing one derivative evaluation. The energy
/// field is assembled from the other columns, so the decomposition identity
/// holds exactly.
DiagnosticsSample sample_diagnostics(const Field& field, const PdeModel& model, double dt_used = 0.0);

/// Fixed column order: t,mass,energy,kinetic,wn1,wn2,V,y,vpp_formula,max_amp,dt
void write_diagnostics_csv(std::ostream& out, const DiagnosticsSeries& series);

}  // namespace dinls
