#pragma once

#include <span>
#include <vector>

namespace lnhom {

/// Distances between standardized samples and the standard normal law.
struct NormalityReport {
  double ks = 0.0;       // sup |F_n - Phi|
  double w1 = 0.0;       // int |F_n - Phi| (1-Wasserstein, quantile coupling)
  double tv_hist = 0.0;  // binned total variation, Freedman-Diaconis bins
  std::size_t n = 0;
};

/// Subtracts the sample mean and divides by `scale` (the reference standard
/// deviation, e.g. sqrt(eps) * sigma(f,g)) before comparing with N(0,1).
/// Throws DegenerateSample on zero sample variance or scale <= 0.
NormalityReport normality_test(std::span<const double> samples, double scale);

/// Distances of already standardized values (no centering).
NormalityReport normality_distances(std::vector<double> standardized);

/// 1% critical value of the one-sample KS statistic, 1.63 / sqrt(n).
double ks_critical_1pct(std::size_t n);

double normal_cdf(double x) noexcept;

}  // namespace lnhom
