#include "lnhom/covariance.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "lnhom/error.hpp"
#include "lnhom/quadrature.hpp"

namespace lnhom {

std::string_view to_string(CovarianceFamily family) noexcept {
  switch (family) {
    case CovarianceFamily::Cauchy: return "cauchy";
    case CovarianceFamily::Gaussian: return "gaussian";
    case CovarianceFamily::Exponential: return "exponential";
  }
  return "unknown";
}

CovarianceFamily parse_family(std::string_view text) {
  if (text == "cauchy") return CovarianceFamily::Cauchy;
  if (text == "gaussian") return CovarianceFamily::Gaussian;
  if (text == "exponential") return CovarianceFamily::Exponential;
  throw Error(ErrorCode::Config, "unknown covariance family '" + std::string(text) +
                                     "' (expected cauchy|gaussian|exponential)");
}

void validate(const CovarianceModel& model) {
  if (!(model.sigma0 >= 0.0) || !std::isfinite(model.sigma0))
    throw Error(ErrorCode::InvalidArgument, "covariance: sigma0 must be >= 0");
  if (!(model.ell > 0.0) || !std::isfinite(model.ell))
    throw Error(ErrorCode::InvalidArgument, "covariance: ell must be > 0");
  if (!(model.beta > 0.0) || !std::isfinite(model.beta))
    throw Error(ErrorCode::InvalidArgument, "covariance: beta must be > 0");
}

DecayRegime regime(const CovarianceModel& model) noexcept {
  if (model.family != CovarianceFamily::Cauchy || model.beta > 1.0) return DecayRegime::Integrable;
  if (model.beta == 1.0) return DecayRegime::LogBeta1;
  return DecayRegime::FractionalBeta;
}

double effective_beta(const CovarianceModel& model) noexcept {
  if (model.family == CovarianceFamily::Cauchy) return model.beta;
  return std::numeric_limits<double>::infinity();
}

double evaluate(const CovarianceModel& model, double x) noexcept {
  const double r = std::abs(x) / model.ell;
  switch (model.family) {
    case CovarianceFamily::Cauchy:
      return model.sigma0 * std::pow(1.0 + r * r, -0.5 * model.beta);
    case CovarianceFamily::Gaussian:
      return model.sigma0 * std::exp(-r * r);
    case CovarianceFamily::Exponential:
      return model.sigma0 * std::exp(-r);
  }
  return 0.0;
}

double inverse_coeff_covariance(const CovarianceModel& model, double x) noexcept {
  return std::exp(model.sigma0) * std::expm1(evaluate(model, x));
}

namespace {

constexpr double kRelTol = 1e-10;

// Bound on the integral of C over [t, inf).
double covariance_tail(const CovarianceModel& model, double t) {
  const double r = t / model.ell;
  switch (model.family) {
    case CovarianceFamily::Gaussian:
      return model.sigma0 * model.ell * 0.5 * std::sqrt(M_PI) * std::erfc(r);
    case CovarianceFamily::Exponential:
      return model.sigma0 * model.ell * std::exp(-r);
    case CovarianceFamily::Cauchy:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

// Integral over [0, inf) of an integrand F with 0 <= F(x) <= tail_factor * C(x).
// decay is the power-law exponent of F for the Cauchy family.
double half_line_integral(const CovarianceModel& model, const std::function<double(double)>& F,
                          double tail_factor, double decay) {
  if (model.family != CovarianceFamily::Cauchy) {
    // Analytic tail bound picks the truncation point.
    double t = 4.0 * model.ell;
    for (;;) {
      const double body = quad::gauss_kronrod(F, 0.0, t, kRelTol).value;
      const double tail = tail_factor * covariance_tail(model, t);
      if (tail <= 1e-3 * kRelTol * std::abs(body) || tail < 1e-300) return body;
      t *= 2.0;
    }
  }
  // Power-law tail: map [t0, inf) onto (0, 1] with x = t0 * u^(-q), q chosen so
  // the transformed integrand vanishes linearly at u = 0.
  const double t0 = 4.0 * model.ell;
  const double q = 2.0 / (decay - 1.0);
  const double body = quad::gauss_kronrod(F, 0.0, t0, kRelTol).value;
  auto mapped = [&](double u) {
    const double x = t0 * std::pow(u, -q);
    if (!std::isfinite(x)) return 0.0;
    const double v = F(x) * q * x / u;
    return std::isfinite(v) ? v : 0.0;
  };
  const double tail = quad::gauss_kronrod(mapped, 0.0, 1.0, kRelTol).value;
  return body + tail;
}

}  // namespace

double covariance_integral(const CovarianceModel& model, int power) {
  validate(model);
  if (power != 1 && power != 2)
    throw Error(ErrorCode::InvalidArgument, "covariance_integral: power must be 1 or 2");
  if (model.sigma0 == 0.0) return 0.0;
  const double decay = power * effective_beta(model);
  if (model.family == CovarianceFamily::Cauchy && decay <= 1.0)
    throw Error(ErrorCode::NonIntegrableRegime, "covariance_integral: C^power not integrable");
  auto F = [&](double x) {
    const double c = evaluate(model, x);
    return power == 1 ? c : c * c;
  };
  const double factor = power == 1 ? 1.0 : model.sigma0;
  return 2.0 * half_line_integral(model, F, factor, decay);
}

double fluctuation_constant_Q(const CovarianceModel& model) {
  validate(model);
  if (regime(model) != DecayRegime::Integrable)
    throw Error(ErrorCode::NonIntegrableRegime,
                "fluctuation_constant_Q: covariance not integrable (Cauchy beta <= 1)");
  if (model.sigma0 == 0.0) return 0.0;
  auto F = [&](double x) { return std::expm1(evaluate(model, x)); };
  // exp(C) - 1 <= C * exp(C(0)) since 0 <= C <= C(0) for these families.
  const double body = half_line_integral(model, F, std::exp(model.sigma0), effective_beta(model));
  return std::exp(model.sigma0) * 2.0 * body;
}

AsymptoticConstants asymptotic_constants(const CovarianceModel& model) {
  validate(model);
  if (model.family != CovarianceFamily::Cauchy || model.beta > 1.0)
    throw Error(ErrorCode::WrongRegime, "asymptotic_constants: require Cauchy with beta <= 1");
  AsymptoticConstants out;
  if (model.beta < 1.0) {
    out.plus = out.minus = model.sigma0 * std::pow(model.ell, model.beta);
  } else {
    // int_{-L}^{L} sigma0 (1 + (x/ell)^2)^(-1/2) dx = 2 sigma0 ell asinh(L/ell).
    out.log = 2.0 * model.sigma0 * model.ell;
  }
  return out;
}

}  // namespace lnhom
