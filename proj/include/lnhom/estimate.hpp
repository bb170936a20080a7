#pragma once

#include <cstddef>
#include <span>

namespace lnhom {

/// Monte Carlo estimate of a mean with its standard error.
struct MCEstimate {
  double mean = 0.0;
  double variance = 0.0;  // sample variance of the underlying draws (n - 1 denominator)
  double stderr = 0.0;    // sqrt(variance / n)
  std::size_t n = 0;
};

/// Mean, sample variance and standard error of i.i.d. draws. Requires n >= 2.
MCEstimate estimate_mean(std::span<const double> draws);

}  // namespace lnhom
