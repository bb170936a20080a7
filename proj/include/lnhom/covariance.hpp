#pragma once

#include <string>
#include <string_view>

namespace lnhom {

enum class CovarianceFamily { Cauchy, Gaussian, Exponential };

std::string_view to_string(CovarianceFamily family) noexcept;
CovarianceFamily parse_family(std::string_view text);

/// Stationary covariance of the Gaussian field G.
///
///   Cauchy       C(x) = sigma0 * (1 + (x/ell)^2)^(-beta/2)
///   Gaussian     C(x) = sigma0 * exp(-(x/ell)^2)
///   Exponential  C(x) = sigma0 * exp(-|x|/ell)
///
/// beta is the tail exponent for Cauchy. Gaussian and Exponential decay faster
/// than any power and always sit in the integrable regime; their beta field is
/// carried through configs but ignored.
struct CovarianceModel {
  CovarianceFamily family = CovarianceFamily::Gaussian;
  double sigma0 = 1.0;
  double ell = 1.0;
  double beta = 2.0;

  friend bool operator==(const CovarianceModel&, const CovarianceModel&) = default;
};

/// Throws InvalidArgument unless sigma0 >= 0, ell > 0, beta > 0.
void validate(const CovarianceModel& model);

/// Decay regime: beta > 1 is integrable, beta == 1 logarithmic, beta < 1 fractional.
enum class DecayRegime { Integrable, LogBeta1, FractionalBeta };

DecayRegime regime(const CovarianceModel& model) noexcept;

/// Tail exponent used by the rate models; +inf for the fast-decaying families.
double effective_beta(const CovarianceModel& model) noexcept;

double evaluate(const CovarianceModel& model, double x) noexcept;

/// Covariance of 1/a at lag x: exp(C(0)) * (exp(C(x)) - 1).
double inverse_coeff_covariance(const CovarianceModel& model, double x) noexcept;

/// Q = exp(C(0)) * integral over R of (exp(C(x)) - 1) dx, to relative
/// tolerance 1e-8. Throws NonIntegrableRegime for Cauchy with beta <= 1.
double fluctuation_constant_Q(const CovarianceModel& model);

/// Integral over R of C^power (power 1 or 2), same quadrature as Q.
double covariance_integral(const CovarianceModel& model, int power);

struct AsymptoticConstants {
  double plus = 0.0;   // lim x^beta C(+x)   (beta < 1)
  double minus = 0.0;  // lim x^beta C(-x)   (beta < 1)
  double log = 0.0;    // lim (1/log L) int_{-L}^{L} C   (beta == 1)
};

/// Tail constants of a Cauchy model with beta <= 1. Throws WrongRegime otherwise.
AsymptoticConstants asymptotic_constants(const CovarianceModel& model);

}  // namespace lnhom
