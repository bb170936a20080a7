#pragma once

#include <span>
#include <vector>

#include "lnhom/field_sampler.hpp"
#include "lnhom/source_function.hpp"

namespace lnhom {

/// The part of a fast-variable sample that covers [0, 1/epsilon], viewed on
/// the physical interval [0,1] with spacing dx = epsilon * h.
struct PhysicalWindow {
  std::size_t n = 0;
  double dx = 0.0;
  double epsilon = 1.0;
  std::span<const double> a;  // a(x_i / epsilon), i < n

  [[nodiscard]] double x(std::size_t i) const { return static_cast<double>(i) * dx; }
};

/// Throws GridTooShort if the sample does not reach 1/epsilon, InvalidArgument
/// if epsilon is outside (0,1] or 1/epsilon does not fall on a grid node.
PhysicalWindow physical_window(const FieldSample& sample, double epsilon);

/// Solution of (a(x/eps) u')' = f' on (0,1), u(0) = u(1) = 0, on the physical grid.
struct BVPSolution {
  std::vector<double> u;
  std::vector<double> du;
  double c1 = 0.0;  // a(x/eps) u'(x) - f(x)
  double epsilon = 1.0;
  double dx = 0.0;
};

/// Closed-form solution with cumulative trapezoid integrals of 1/a and f/a.
/// u' comes from the closed formula, not from differencing u.
BVPSolution solve(const FieldSample& sample, const SourceFunction& f, double epsilon);

/// I_eps(f,g) = int_0^1 u_eps' g from the three-term explicit formula.
double observable_I(const FieldSample& sample, const SourceFunction& f, const SourceFunction& g,
                    double epsilon);

struct DualityPair {
  double lhs = 0.0;  // int u' g, u solved with forcing f
  double rhs = 0.0;  // int v' f, v solved with forcing g
};

DualityPair duality_check(const FieldSample& sample, const SourceFunction& f,
                          const SourceFunction& g, double epsilon);

/// max_i |a(x_i/eps) u'(x_i) - f(x_i) - c1|.
double flux_residual(const FieldSample& sample, const BVPSolution& solution,
                     const SourceFunction& f);

}  // namespace lnhom
