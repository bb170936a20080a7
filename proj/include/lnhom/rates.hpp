#pragma once

#include <span>
#include <string_view>

#include "lnhom/covariance.hpp"

namespace lnhom {

/// Rate labels as functions of epsilon.
///   PiBeta         eps^(beta/2) (beta<1), sqrt(eps)|log eps|^(1/2) (beta=1), sqrt(eps) (beta>1)
///   PiBetaSquared  the square of PiBeta (variance scaling)
///   PiBigBeta      covariance-convergence rate for beta <= 1 without the gamma terms:
///                  eps^(min(beta,1-beta)), times |log eps| at beta = 1/2, and |log eps|^(-1) at beta = 1
enum class RateKind { PiBeta, PiBetaSquared, PiBigBeta };

struct RateModel {
  RateKind kind = RateKind::PiBeta;
  double beta = 2.0;

  /// Power of eps, excluding logarithmic factors.
  [[nodiscard]] double exponent() const;
  /// True when a |log eps| factor accompanies the power.
  [[nodiscard]] bool has_log_factor() const;
  [[nodiscard]] double value(double epsilon) const;
};

RateModel oscillation_rate(const CovarianceModel& model);
RateModel variance_rate(const CovarianceModel& model);

/// Ordinary least squares y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_stderr = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit of log2(values) against log2(abscissa). With a rate model carrying a log
/// factor the abscissa is log2(rate(eps)), otherwise log2(eps). Throws
/// DegenerateFit if any value is <= 0 or fewer than 3 points are given.
LineFit fit_rate(std::span<const double> epsilons, std::span<const double> values,
                 const RateModel& rate);

}  // namespace lnhom
