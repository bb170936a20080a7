#pragma once

#include <functional>

#include "lnhom/covariance.hpp"
#include "lnhom/source_function.hpp"

namespace lnhom {

struct LimitingVariance {
  double sigma2 = 0.0;
  DecayRegime regime = DecayRegime::Integrable;
};

/// sigma^2(f,g) of the rescaled observable I_eps(f,g), with h = (f - mean f)(g - mean g):
///   beta > 1   Q * int h^2
///   beta < 1   exp(C(0)) Cbar int int h(x) |x-y|^(-beta) h(y)
///   beta = 1   exp(C(0)) Cbar int h^2
LimitingVariance limiting_variance(const CovarianceModel& model, const SourceFunction& f,
                                   const SourceFunction& g, int cells = 2048);

/// int_0^1 int_0^1 h(x) |x-y|^(-beta) h(y) dx dy for 0 < beta < 1. Product
/// integration: h is taken at cell midpoints and the kernel is integrated
/// exactly over every cell pair.
double singular_double_integral(const std::function<double(double)>& h, double beta, int cells);

/// abar^4 Q int_0^1 ubar'^2 vbar'^2 (limiting variance of J_eps(ubar' vbar')).
double commutator_limiting_variance(const CovarianceModel& model, const SourceFunction& f,
                                    const SourceFunction& g);

}  // namespace lnhom
