#include "dinls/picard.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dinls/error.hpp"
#include "dinls/propagator.hpp"

namespace dinls {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::PreconditionFailed, "quadrature needs at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn_1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn_1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace {

class DuhamelIterator {
 public:
  DuhamelIterator(const Field& u0, const PdeModel& model, int quad_nodes)
      : u0_(u0), model_(model), propagator_(u0.grid_ptr()), rule_(gauss_legendre(quad_nodes)) {}

  std::vector<Complex> iterate(int level, double t) {
    std::vector<Complex> out(u0_.values().begin(), u0_.values().end());
    propagator_.apply(out, t);
    if (level == 0 || t == 0.0) return out;
    const double half = 0.5 * t;
    for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
      const double s = half * (rule_.nodes[k] + 1.0);
      std::vector<Complex> f = forcing(iterate(level - 1, s));
      propagator_.apply(f, t - s);
      const Complex factor(0.0, -half * rule_.weights[k]);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += factor * f[j];
    }
    return out;
  }

  double distance(std::span<const Complex> a, std::span<const Complex> b) const {
    const auto w = u0_.grid().weights();
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) sum += std::norm(a[j] - b[j]) * w[j];
    return std::sqrt(sum);
  }

 private:
  std::vector<Complex> forcing(std::vector<Complex> u) const {
    const auto r = u0_.grid().nodes();
    const double centrifugal = u0_.grid().centrifugal_constant();
    for (std::size_t j = 0; j < u.size(); ++j) {
      const double a = std::abs(u[j]);
      double coefficient = centrifugal / (r[j] * r[j]);
      for (const auto& term : model_.terms) {
        if (term.coupling == 0.0 || a == 0.0) continue;
        coefficient += term.coupling * std::pow(r[j], -term.weight) * std::pow(a, term.power);
      }
      u[j] *= coefficient;
    }
    return u;
  }

  const Field& u0_;
  const PdeModel& model_;
  LinearPropagator propagator_;
  QuadratureRule rule_;
};

}  // namespace

PicardResult picard_solve(const Field& u0, const PdeModel& model, double T, int iterations, int quad_nodes) {
  if (!(T > 0.0)) throw Error(ErrorCode::PreconditionFailed, "Picard horizon T must be positive");
  if (iterations < 2) throw Error(ErrorCode::PreconditionFailed, "need at least 2 Picard iterations");
  if (quad_nodes < 4) throw Error(ErrorCode::PreconditionFailed, "need at least 4 quadrature nodes");
  if (model.dimension != u0.grid().dimension())
    throw Error(ErrorCode::PreconditionFailed, "model and grid dimensions differ");

  DuhamelIterator duhamel(u0, model, quad_nodes);
  std::vector<Complex> previous = duhamel.iterate(0, T);
  std::vector<double> distances;
  for (int m = 1; m <= iterations; ++m) {
    std::vector<Complex> current = duhamel.iterate(m, T);
    distances.push_back(duhamel.distance(current, previous));
    if (distances.size() >= 2 && distances.back() > distances[distances.size() - 2])
      throw Error(ErrorCode::NoContraction, "iterate distance grew from " +
                                                std::to_string(distances[distances.size() - 2]) + " to " +
                                                std::to_string(distances.back()) + " at m = " + std::to_string(m));
    previous = std::move(current);
  }
  return {Field(u0.grid_ptr(), std::move(previous), u0.time() + T), std::move(distances)};
}

}  // namespace dinls
