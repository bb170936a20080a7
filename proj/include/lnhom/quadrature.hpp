#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lnhom::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on a finite interval. Bisects the
/// interval with the largest error estimate until the summed estimate drops
/// below max(abs_tol, rel_tol * |value|) or max_intervals is reached.
/// Requires a <= b.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol = 0.0, int max_intervals = 4000);

/// Composite trapezoid on a uniform grid.
double trapezoid(std::span<const double> y, double h);

/// Cumulative trapezoid: out[0] = 0, out[i] = integral up to node i.
std::vector<double> cumulative_trapezoid(std::span<const double> y, double h);

}  // namespace lnhom::quad
