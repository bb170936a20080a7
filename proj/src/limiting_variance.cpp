#include "lnhom/limiting_variance.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "lnhom/error.hpp"
#include "lnhom/homogenization.hpp"
#include "lnhom/quadrature.hpp"

namespace lnhom {
namespace {

double integral_01(const std::function<double(double)>& fn) {
  return quad::gauss_kronrod(fn, 0.0, 1.0, 1e-12, 1e-300).value;
}

}  // namespace

double singular_double_integral(const std::function<double(double)>& h, double beta, int cells) {
  if (!(beta > 0.0 && beta < 1.0))
    throw Error(ErrorCode::InvalidArgument, "singular_double_integral: need 0 < beta < 1");
  if (cells < 1) throw Error(ErrorCode::InvalidArgument, "singular_double_integral: cells >= 1");
  const double delta = 1.0 / cells;
  // Cell-pair weights depend only on the index offset k: the second difference
  // of F(u) = |u|^(2-beta) / ((1-beta)(2-beta)).
  const double norm = 1.0 / ((1.0 - beta) * (2.0 - beta));
  auto F = [&](double u) { return std::pow(std::abs(u), 2.0 - beta) * norm; };
  std::vector<double> weight(cells);
  for (int k = 0; k < cells; ++k) {
    const double kk = k;
    weight[k] = k < 64 ? F(kk + 1.0) - 2.0 * F(kk) + F(kk - 1.0)
                       // Far from the diagonal the second difference loses digits;
                       // the Taylor series of the same difference replaces it.
                       : std::pow(kk, -beta) *
                             (1.0 + beta * (beta + 1.0) / (12.0 * kk * kk) +
                              beta * (beta + 1.0) * (beta + 2.0) * (beta + 3.0) /
                                  (360.0 * kk * kk * kk * kk));
  }
  std::vector<double> hv(cells);
  for (int i = 0; i < cells; ++i) hv[i] = h((i + 0.5) * delta);
  double total = 0.0;
  for (int i = 0; i < cells; ++i) {
    double row = hv[i] * weight[0];
    for (int j = 0; j < i; ++j) row += 2.0 * hv[j] * weight[i - j];
    total += hv[i] * row;
  }
  return total * std::pow(delta, 2.0 - beta);
}

LimitingVariance limiting_variance(const CovarianceModel& model, const SourceFunction& f,
                                   const SourceFunction& g, int cells) {
  validate(model);
  const double fm = f.mean();
  const double gm = g.mean();
  const std::function<double(double)> h = [&](double x) { return (f(x) - fm) * (g(x) - gm); };
  LimitingVariance out;
  out.regime = regime(model);
  if (model.sigma0 == 0.0 || f.is_constant() || g.is_constant()) return out;
  const double h2 = integral_01([&](double x) { return h(x) * h(x); });
  switch (out.regime) {
    case DecayRegime::Integrable:
      out.sigma2 = fluctuation_constant_Q(model) * h2;
      break;
    case DecayRegime::LogBeta1:
      out.sigma2 = std::exp(model.sigma0) * asymptotic_constants(model).log * h2;
      break;
    case DecayRegime::FractionalBeta: {
      // Even family: Cbar^+ = Cbar^-, so the sign(x-y) selection is immaterial.
      const double cbar = asymptotic_constants(model).plus;
      out.sigma2 =
          std::exp(model.sigma0) * cbar * singular_double_integral(h, model.beta, cells);
      break;
    }
  }
  return out;
}

double commutator_limiting_variance(const CovarianceModel& model, const SourceFunction& f,
                                    const SourceFunction& g) {
  const double abar = homogenized_coefficient(model);
  const auto flux = homogenized_flux_product(f, g, abar);
  const double a4 = std::pow(abar, 4);
  return a4 * fluctuation_constant_Q(model) *
         integral_01([&](double x) { return flux(x) * flux(x); });
}

}  // namespace lnhom
