#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dinls/error.hpp"
#include "dinls/initial_data.hpp"
#include "dinls/observables.hpp"
#include "oracles.hpp"

using namespace dinls;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

ProblemParams params(double l1, double l2, const char* p1, const char* p2, const char* b1, const char* b2) {
  return validate_params({3, l1, l2, Number::parse(p1), Number::parse(p2), Number::parse(b1), Number::parse(b2)});
}

}  // namespace

class GaussianN3 : public ::testing::Test {
 protected:
  GridPtr grid = make_radial_grid(3, 10.0, 4096);
  Field u = chirped_gaussian(grid, 1.0);
};

TEST_F(GaussianN3, Mass) {
  EXPECT_NEAR(mass(u), std::pow(kHalfPi, 1.5), 1e-6);
  EXPECT_NEAR(mass(chirped_gaussian(grid, 3.0)), 9.0 * mass(u), 1e-12);
}

TEST_F(GaussianN3, Kinetic) {
  EXPECT_NEAR(kinetic(u), 3.0 * std::pow(kHalfPi, 1.5), 1e-9);
  EXPECT_NEAR(energy(u, PdeModel::linear(3)), 1.5 * std::pow(kHalfPi, 1.5), 1e-9);
}

TEST_F(GaussianN3, WeightedNorms) {
  const double omega2 = 4.0 * std::numbers::pi;
  // Closed form omega_2 Gamma(5/4) / (2 * 3^{5/4}).
  EXPECT_NEAR(weighted_norm(u, 3.0, 0.5), omega2 * std::tgamma(1.25) / (2.0 * std::pow(3.0, 1.25)), 1e-5);
  for (double p : {2.0, 3.0, 5.0}) {
    for (double b : {0.0, 0.4, 1.0}) {
      const double expected = oracle::gaussian_weighted_norm(3, p, b);
      EXPECT_NEAR(weighted_norm(u, p, b), expected, 1e-5 * expected) << p << " " << b;
    }
  }
  // Homogeneity: A^p scaling.
  EXPECT_NEAR(weighted_norm(chirped_gaussian(grid, 2.0), 5.0, 0.5), 32.0 * weighted_norm(u, 5.0, 0.5), 1e-10);
}

TEST_F(GaussianN3, WeightedNormPreconditions) {
  EXPECT_THROW(weighted_norm(u, 3.0, 3.0), Error);
  EXPECT_THROW(weighted_norm(u, 3.0, -0.1), Error);
  EXPECT_THROW(weighted_norm(u, 0.5, 0.0), Error);
}

TEST_F(GaussianN3, UnweightedNormMatchesDirectQuadrature) {
  std::vector<double> density;
  for (const auto& z : u.values()) density.push_back(std::pow(std::abs(z), 4.0));
  EXPECT_NEAR(weighted_norm(u, 4.0, 0.0), integrate(*grid, density), 1e-14);
}

TEST_F(GaussianN3, Variance) { EXPECT_NEAR(variance(u), 0.75 * std::pow(kHalfPi, 1.5), 1e-6); }

TEST_F(GaussianN3, VirialYOfChirpedGaussian) {
  EXPECT_NEAR(virial_y(u), 0.0, 1e-12);
  const Field chirped = chirped_gaussian(grid, 1.0, 1.0, 0.7);
  EXPECT_NEAR(virial_y(chirped), 2.0 * 0.7 * variance(chirped), 1e-3 * 2.0 * 0.7 * variance(chirped));
}

TEST_F(GaussianN3, VppFormulaMatchesClosedForms) {
  const auto p = params(1.0, -1.0, "1", "3", "0.4", "1/2");
  const double expected = 8.0 * oracle::gaussian_kinetic(3) +
                          4.0 * 1.0 * (3.0 * 1 + 2 * 0.4) / 3.0 * oracle::gaussian_weighted_norm(3, 3, 0.4) -
                          4.0 * (3.0 * 3 + 2 * 0.5) / 5.0 * oracle::gaussian_weighted_norm(3, 5, 0.5);
  EXPECT_NEAR(virial_vpp(u, p), expected, 1e-5 * std::abs(expected));
  EXPECT_NEAR(virial_vpp(u, PdeModel::linear(3)), 8.0 * kinetic(u), 1e-12);
}

TEST_F(GaussianN3, ZeroFieldGivesZeros) {
  const Field z(grid);
  const auto p = params(1.0, 1.0, "1", "3", "1/2", "1/2");
  EXPECT_EQ(mass(z), 0.0);
  EXPECT_EQ(kinetic(z), 0.0);
  EXPECT_EQ(energy(z, p), 0.0);
  EXPECT_EQ(variance(z), 0.0);
  EXPECT_EQ(virial_y(z), 0.0);
  EXPECT_EQ(virial_vpp(z, p), 0.0);
}

TEST(Observables, KineticInHigherDimensions) {
  for (int n : {4, 5}) {
    const auto g = make_radial_grid(n, 10.0, 4096);
    const double expected = oracle::gaussian_kinetic(n);
    EXPECT_NEAR(kinetic(chirped_gaussian(g, 1.0)), expected, 1e-5 * expected) << "N=" << n;
    EXPECT_NEAR(mass(chirped_gaussian(g, 1.0)), oracle::gaussian_mass(n, 1.0, 1.0), 1e-6) << "N=" << n;
  }
}

TEST(Observables, FreeGaussianVirialRelations) {
  // Analytic u(t) = (1+4it)^{-3/2} exp(-r^2/(1+4it)): V(t) = V(0)(1 + 16 t^2).
  const auto g = make_radial_grid(3, 20.0, 4096);
  auto at = [&](double t) {
    std::vector<Complex> u;
    for (double r : g->nodes()) u.push_back(oracle::free_gaussian(3, r, t));
    return Field(g, std::move(u), t);
  };
  const double v0 = variance(at(0.0));
  const double h = 1e-3;
  for (double t : {0.05, 0.15, 0.3}) {
    EXPECT_NEAR(variance(at(t)), v0 * (1 + 16 * t * t), 1e-6 * v0 * (1 + 16 * t * t));
    const double dv = (variance(at(t + h)) - variance(at(t - h))) / (2 * h);
    EXPECT_NEAR(dv, -4.0 * virial_y(at(t)), 0.01 * std::abs(dv)) << t;
    const double d2v = (variance(at(t + h)) - 2 * variance(at(t)) + variance(at(t - h))) / (h * h);
    EXPECT_NEAR(d2v, 8.0 * kinetic(at(t)), 0.01 * d2v) << t;
  }
}

TEST(Observables, DiagnosticsAreInternallyConsistent) {
  const auto g = make_radial_grid(3, 10.0, 1024);
  const auto p = params(1.0, -1.0, "1", "3", "0.4", "1/2");
  const auto model = PdeModel::from_params(p);
  const Field u = chirped_gaussian(g, 1.3, 1.0, 0.2);
  const auto s = sample_diagnostics(u, model, 0.01);
  EXPECT_EQ(s.energy, 0.5 * s.kinetic + 1.0 / 3.0 * s.weighted_norm_1 - 1.0 / 5.0 * s.weighted_norm_2);
  EXPECT_NEAR(s.energy, energy(u, p), 1e-12 * std::abs(s.energy));
  EXPECT_NEAR(s.y, virial_y(u), 1e-12);
  EXPECT_NEAR(s.vpp_formula, virial_vpp(u, p), 1e-10 * std::abs(s.vpp_formula));
  EXPECT_EQ(s.dt_used, 0.01);
  EXPECT_NEAR(s.max_amplitude, 1.3 * std::exp(-g->nodes()[0] * g->nodes()[0]), 1e-15);
}

TEST(Observables, DiagnosticsCsvLayout) {
  DiagnosticsSeries series(2);
  series[1].t = 0.5;
  series[1].mass = 1.0 / 3.0;
  std::ostringstream out;
  write_diagnostics_csv(out, series);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,mass,energy,kinetic,wn1,wn2,V,y,vpp_formula,max_amp,dt");
  EXPECT_NE(text.find("0.5,0.33333333333333331,"), std::string::npos);
}

TEST(Observables, BlowupCoefficient) {
  const auto p = params(1.0, -1.0, "1", "3", "0.4", "1/2");
  RegimeVerdict v;
  v.kind = Regime::BlowupCaseI;
  EXPECT_DOUBLE_EQ(blowup_coefficient(p, v), 3.0);
  v.kind = Regime::GlobalCase1;
  try {
    blowup_coefficient(p, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotABlowupRegime);
  }
}

TEST(InitialData, ZeroEnergyAmplitudeBracketsSignChange) {
  const auto g = make_radial_grid(3, 10.0, 1024);
  const auto model = PdeModel::from_params(params(1.0, -1.0, "1", "3", "0.4", "1/2"));
  const double a = zero_energy_amplitude(g, model, 1.0, 0.0, 0.1, 10.0, 1e-12);
  EXPECT_LT(energy(chirped_gaussian(g, a), model), 0.0);
  EXPECT_GE(energy(chirped_gaussian(g, a * (1 - 1e-9)), model), 0.0);
  EXPECT_THROW(zero_energy_amplitude(g, model, 1.0, 0.0, 0.1, 0.2), Error);
}
