#include "lnhom/solver.hpp"

#include <algorithm>
#include <cmath>

#include "lnhom/error.hpp"
#include "lnhom/quadrature.hpp"

namespace lnhom {

PhysicalWindow physical_window(const FieldSample& sample, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1]");
  const double span = 1.0 / epsilon;
  if (sample.grid.length < span * (1.0 - 1e-12))
    throw Error(ErrorCode::GridTooShort, "sample of length " + std::to_string(sample.grid.length) +
                                             " does not cover [0, 1/epsilon = " +
                                             std::to_string(span) + "]");
  const double cells = span / sample.grid.h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-8 * std::max(1.0, cells))
    throw Error(ErrorCode::InvalidArgument, "1/epsilon does not fall on a grid node");
  PhysicalWindow w;
  w.n = static_cast<std::size_t>(rounded) + 1;
  w.n = std::min(w.n, sample.grid.n);
  w.dx = 1.0 / static_cast<double>(w.n - 1);
  w.epsilon = epsilon;
  w.a = std::span<const double>(sample.a_values).first(w.n);
  return w;
}

BVPSolution solve(const FieldSample& sample, const SourceFunction& f, double epsilon) {
  const PhysicalWindow w = physical_window(sample, epsilon);
  std::vector<double> slowness(w.n);
  std::vector<double> forced(w.n);
  for (std::size_t i = 0; i < w.n; ++i) {
    slowness[i] = 1.0 / w.a[i];
    forced[i] = slowness[i] * f(w.x(i));
  }
  const auto R = quad::cumulative_trapezoid(slowness, w.dx);
  const auto P = quad::cumulative_trapezoid(forced, w.dx);

  BVPSolution out;
  out.epsilon = epsilon;
  out.dx = w.dx;
  out.c1 = -P.back() / R.back();
  out.u.resize(w.n);
  out.du.resize(w.n);
  for (std::size_t i = 0; i < w.n; ++i) {
    out.u[i] = P[i] + out.c1 * R[i];
    out.du[i] = slowness[i] * (f(w.x(i)) + out.c1);
  }
  out.u.front() = 0.0;
  out.u.back() = 0.0;
  return out;
}

double observable_I(const FieldSample& sample, const SourceFunction& f, const SourceFunction& g,
                    double epsilon) {
  const PhysicalWindow w = physical_window(sample, epsilon);
  std::vector<double> s(w.n), sf(w.n), sg(w.n), sfg(w.n);
  for (std::size_t i = 0; i < w.n; ++i) {
    const double x = w.x(i);
    s[i] = 1.0 / w.a[i];
    sf[i] = s[i] * f(x);
    sg[i] = s[i] * g(x);
    sfg[i] = sf[i] * g(x);
  }
  const double mean_s = quad::trapezoid(s, w.dx);
  return quad::trapezoid(sfg, w.dx) -
         quad::trapezoid(sg, w.dx) * quad::trapezoid(sf, w.dx) / mean_s;
}

DualityPair duality_check(const FieldSample& sample, const SourceFunction& f,
                          const SourceFunction& g, double epsilon) {
  auto pair_integral = [&](const SourceFunction& forcing, const SourceFunction& test) {
    const BVPSolution sol = solve(sample, forcing, epsilon);
    std::vector<double> integrand(sol.du.size());
    for (std::size_t i = 0; i < integrand.size(); ++i)
      integrand[i] = sol.du[i] * test(static_cast<double>(i) * sol.dx);
    return quad::trapezoid(integrand, sol.dx);
  };
  return {pair_integral(f, g), pair_integral(g, f)};
}

double flux_residual(const FieldSample& sample, const BVPSolution& solution,
                     const SourceFunction& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < solution.du.size(); ++i) {
    const double x = static_cast<double>(i) * solution.dx;
    worst = std::max(worst, std::abs(sample.a_values[i] * solution.du[i] - f(x) - solution.c1));
  }
  return worst;
}

}  // namespace lnhom
