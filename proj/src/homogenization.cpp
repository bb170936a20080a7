#include "lnhom/homogenization.hpp"

#include <algorithm>
#include <cmath>

#include "lnhom/error.hpp"
#include "lnhom/quadrature.hpp"

namespace lnhom {

double homogenized_coefficient(const CovarianceModel& model) noexcept {
  return std::exp(-0.5 * model.sigma0);
}

HomogenizedProblem::HomogenizedProblem(double abar, SourceFunction f)
    : abar_(abar), f_(std::move(f)), f_mean_(f_.mean()) {
  if (!(abar > 0.0)) throw Error(ErrorCode::InvalidArgument, "abar must be > 0");
}

double HomogenizedProblem::ubar(double x) const { return (f_.primitive(x) - x * f_mean_) / abar_; }
double HomogenizedProblem::dubar(double x) const { return (f_(x) - f_mean_) / abar_; }
double HomogenizedProblem::d2ubar(double x) const { return f_.derivative(x) / abar_; }

double empirical_abar(const FieldSample& sample, double epsilon) {
  const PhysicalWindow w = physical_window(sample, epsilon);
  std::vector<double> s(w.n);
  for (std::size_t i = 0; i < w.n; ++i) s[i] = 1.0 / w.a[i];
  return 1.0 / quad::trapezoid(s, w.dx);
}

CorrectorField corrector(const FieldSample& sample, double abar) {
  CorrectorField out;
  out.h = sample.grid.h;
  out.dphi.resize(sample.grid.n);
  for (std::size_t i = 0; i < sample.grid.n; ++i) out.dphi[i] = abar * (1.0 / sample.a_values[i] - 1.0 / abar);
  out.phi = quad::cumulative_trapezoid(out.dphi, out.h);
  return out;
}

TwoScaleExpansion::TwoScaleExpansion(const HomogenizedProblem& problem,
                                     const CorrectorField& corrector, double epsilon)
    : problem_(&problem), corrector_(&corrector), epsilon_(epsilon) {
  const double reach = corrector.h * static_cast<double>(corrector.phi.size() - 1);
  if (reach < (1.0 / epsilon) * (1.0 - 1e-12))
    throw Error(ErrorCode::GridTooShort, "two-scale expansion: corrector does not cover [0, 1/eps]");
}

double TwoScaleExpansion::interpolate(const std::vector<double>& values, double y) const {
  const double t = y / corrector_->h;
  const auto last = values.size() - 1;
  auto i = static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, static_cast<double>(last)));
  if (i == last) return values[last];
  const double frac = t - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

double TwoScaleExpansion::operator()(double x) const {
  return problem_->ubar(x) + epsilon_ * problem_->dubar(x) * interpolate(corrector_->phi, x / epsilon_);
}

double TwoScaleExpansion::derivative(double x) const {
  const double y = x / epsilon_;
  return problem_->dubar(x) * (1.0 + interpolate(corrector_->dphi, y)) +
         epsilon_ * problem_->d2ubar(x) * interpolate(corrector_->phi, y);
}

double two_scale_h1_error(const BVPSolution& solution, const HomogenizedProblem& problem,
                          const CorrectorField& corrector) {
  const TwoScaleExpansion expansion(problem, corrector, solution.epsilon);
  const std::size_t n = solution.u.size();
  std::vector<double> e0(n), e1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * solution.dx;
    const double d0 = solution.u[i] - expansion(x);
    const double d1 = solution.du[i] - expansion.derivative(x);
    e0[i] = d0 * d0;
    e1[i] = d1 * d1;
  }
  return std::sqrt(quad::trapezoid(e0, solution.dx) + quad::trapezoid(e1, solution.dx));
}

double commutator_observable_J(const FieldSample& sample, const std::function<double(double)>& psi,
                               double abar, double epsilon) {
  const PhysicalWindow w = physical_window(sample, epsilon);
  std::vector<double> integrand(w.n);
  for (std::size_t i = 0; i < w.n; ++i) integrand[i] = commutator(w.a[i], abar) * psi(w.x(i));
  return quad::trapezoid(integrand, w.dx);
}

double commutator_observable_J(const FieldSample& sample, const SourceFunction& psi, double abar,
                               double epsilon) {
  return commutator_observable_J(sample, std::function<double(double)>(psi), abar, epsilon);
}

double commutator_observable_K(const FieldSample& sample, const SourceFunction& f,
                               const SourceFunction& g, double abar, double epsilon) {
  const PhysicalWindow w = physical_window(sample, epsilon);
  const double g_mean = g.mean();
  std::vector<double> s(w.n), sf(w.n), centered(w.n);
  for (std::size_t i = 0; i < w.n; ++i) {
    const double x = w.x(i);
    s[i] = 1.0 / w.a[i];
    sf[i] = s[i] * f(x);
    centered[i] = (1.0 / abar - s[i]) * (g(x) - g_mean);
  }
  const double weighted_mean_f = quad::trapezoid(sf, w.dx) / quad::trapezoid(s, w.dx);
  return (weighted_mean_f - f.mean()) * quad::trapezoid(centered, w.dx);
}

std::function<double(double)> homogenized_flux_product(const SourceFunction& f,
                                                        const SourceFunction& g, double abar) {
  const double fm = f.mean();
  const double gm = g.mean();
  return [f, g, fm, gm, abar](double x) { return (f(x) - fm) * (g(x) - gm) / (abar * abar); };
}

}  // namespace lnhom
