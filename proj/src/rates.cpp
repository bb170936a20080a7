#include "lnhom/rates.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lnhom/error.hpp"

namespace lnhom {

double RateModel::exponent() const {
  const double beta_exp = beta < 1.0 ? 0.5 * beta : 0.5;
  switch (kind) {
    case RateKind::PiBeta: return beta_exp;
    case RateKind::PiBetaSquared: return 2.0 * beta_exp;
    case RateKind::PiBigBeta:
      if (beta > 1.0) throw Error(ErrorCode::WrongRegime, "PiBigBeta is defined for beta <= 1");
      return beta == 1.0 ? 0.0 : std::min(beta, 1.0 - beta);
  }
  return 0.0;
}

bool RateModel::has_log_factor() const {
  if (kind == RateKind::PiBigBeta) return beta == 1.0 || beta == 0.5;
  return beta == 1.0;
}

double RateModel::value(double epsilon) const {
  const double log_eps = std::abs(std::log(epsilon));
  const double power = std::pow(epsilon, exponent());
  switch (kind) {
    case RateKind::PiBeta: return beta == 1.0 ? power * std::sqrt(log_eps) : power;
    case RateKind::PiBetaSquared: return beta == 1.0 ? power * log_eps : power;
    case RateKind::PiBigBeta:
      if (beta == 1.0) return 1.0 / log_eps;
      return beta == 0.5 ? power * log_eps : power;
  }
  return power;
}

RateModel oscillation_rate(const CovarianceModel& model) {
  return {RateKind::PiBeta, effective_beta(model)};
}

RateModel variance_rate(const CovarianceModel& model) {
  return {RateKind::PiBetaSquared, effective_beta(model)};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw Error(ErrorCode::DegenerateFit, "fit_line: need >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::DegenerateFit, "fit_line: abscissae coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.slope * x[i] - fit.intercept;
    sse += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  fit.slope_stderr = n > 2 ? std::sqrt(sse / double(n - 2) / sxx) : 0.0;
  return fit;
}

LineFit fit_rate(std::span<const double> epsilons, std::span<const double> values,
                 const RateModel& rate) {
  if (epsilons.size() != values.size() || epsilons.size() < 3)
    throw Error(ErrorCode::DegenerateFit, "rate fit needs at least 3 epsilon values");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw Error(ErrorCode::DegenerateFit, "rate fit: non-positive value (deterministic problem?)");
    x.push_back(rate.has_log_factor() ? std::log2(rate.value(epsilons[i])) : std::log2(epsilons[i]));
    y.push_back(std::log2(values[i]));
  }
  return fit_line(x, y);
}

}  // namespace lnhom
