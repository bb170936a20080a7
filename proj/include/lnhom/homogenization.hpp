#pragma once

#include <functional>
#include <vector>

#include "lnhom/covariance.hpp"
#include "lnhom/field_sampler.hpp"
#include "lnhom/solver.hpp"
#include "lnhom/source_function.hpp"

namespace lnhom {

/// abar = exp(-C(0)/2).
double homogenized_coefficient(const CovarianceModel& model) noexcept;

/// Effective problem (abar ubar')' = f', ubar(0) = ubar(1) = 0, in closed form.
class HomogenizedProblem {
 public:
  HomogenizedProblem(double abar, SourceFunction f);

  [[nodiscard]] double abar() const noexcept { return abar_; }
  [[nodiscard]] const SourceFunction& forcing() const noexcept { return f_; }

  [[nodiscard]] double ubar(double x) const;
  /// (f(x) - mean f) / abar
  [[nodiscard]] double dubar(double x) const;
  /// f'(x) / abar
  [[nodiscard]] double d2ubar(double x) const;

 private:
  double abar_;
  SourceFunction f_;
  double f_mean_;
};

/// Harmonic mean of a(./eps) over [0,1].
double empirical_abar(const FieldSample& sample, double epsilon);

/// Corrector on the fast grid: dphi = abar (1/a - 1/abar), phi(0) = 0.
struct CorrectorField {
  double h = 1.0;
  std::vector<double> phi;
  std::vector<double> dphi;
};

CorrectorField corrector(const FieldSample& sample, double abar);

/// x -> ubar(x) + eps ubar'(x) phi(x/eps). Values between fast-grid nodes are
/// linearly interpolated.
class TwoScaleExpansion {
 public:
  TwoScaleExpansion(const HomogenizedProblem& problem, const CorrectorField& corrector,
                    double epsilon);

  [[nodiscard]] double operator()(double x) const;
  /// ubar'(x) (1 + phi'(x/eps)) + eps ubar''(x) phi(x/eps)
  [[nodiscard]] double derivative(double x) const;

 private:
  [[nodiscard]] double interpolate(const std::vector<double>& values, double y) const;

  const HomogenizedProblem* problem_;
  const CorrectorField* corrector_;
  double epsilon_;
};

/// ||u_eps - ubar_2s||_{H^1(0,1)} by trapezoid on the physical grid.
double two_scale_h1_error(const BVPSolution& solution, const HomogenizedProblem& problem,
                          const CorrectorField& corrector);

/// Xi(y) = abar - abar^2 / a(y).
inline double commutator(double a, double abar) noexcept { return abar - abar * abar / a; }

/// J_eps(psi) = int_0^1 Xi(x/eps) psi(x) dx.
double commutator_observable_J(const FieldSample& sample, const std::function<double(double)>& psi,
                               double abar, double epsilon);
double commutator_observable_J(const FieldSample& sample, const SourceFunction& psi, double abar,
                               double epsilon);

/// K_eps(f,g) = ((int 1/a)^{-1} int f/a - int f) * int (1/abar - 1/a)(g - mean g).
double commutator_observable_K(const FieldSample& sample, const SourceFunction& f,
                               const SourceFunction& g, double abar, double epsilon);

/// Product ubar'(x) vbar'(x) = (f - mean f)(g - mean g) / abar^2.
std::function<double(double)> homogenized_flux_product(const SourceFunction& f,
                                                        const SourceFunction& g, double abar);

}  // namespace lnhom
