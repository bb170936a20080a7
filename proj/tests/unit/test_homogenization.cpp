#include <cmath>
#include <vector>

#include "doctest.h"
#include "lnhom/estimate.hpp"
#include "lnhom/field_sampler.hpp"
#include "lnhom/homogenization.hpp"
#include "lnhom/quadrature.hpp"
#include "lnhom/seeds.hpp"
#include "lnhom/solver.hpp"
#include "oracles.hpp"

using namespace lnhom;

namespace {

const CovarianceModel kGauss{CovarianceFamily::Gaussian, 1.0, 0.125};

double trapz_h(const SourceFunction& f, const SourceFunction& g, double dx) {
  const double fm = f.mean(), gm = g.mean();
  const auto n = static_cast<std::size_t>(std::lround(1.0 / dx)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (f(i * dx) - fm) * (g(i * dx) - gm);
  return quad::trapezoid(v, dx);
}

}  // namespace

TEST_CASE("homogenized coefficient is the harmonic mean exp(-C(0)/2)") {
  CHECK(homogenized_coefficient(kGauss) == doctest::Approx(std::exp(-0.5)));
  CHECK(homogenized_coefficient(CovarianceModel{CovarianceFamily::Cauchy, 2.0, 1.0, 0.5}) ==
        doctest::Approx(std::exp(-1.0)));
  CHECK(homogenized_coefficient(CovarianceModel{CovarianceFamily::Gaussian, 0.0, 1.0}) == 1.0);
}

TEST_CASE("homogenized problem solves (abar ubar')' = f' with zero boundary values") {
  const HomogenizedProblem p(0.6, SourceFunction::parse("poly:1,-2,3"));
  CHECK(p.ubar(0.0) == doctest::Approx(0.0));
  CHECK(p.ubar(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  for (double x = 0.1; x < 1.0; x += 0.2) {
    const double h = 1e-5;
    CHECK((p.ubar(x + h) - p.ubar(x - h)) / (2 * h) == doctest::Approx(p.dubar(x)).epsilon(1e-8));
    CHECK((p.dubar(x + h) - p.dubar(x - h)) / (2 * h) == doctest::Approx(p.d2ubar(x)).epsilon(1e-6));
    // abar ubar' - f is the constant -mean(f).
    CHECK(0.6 * p.dubar(x) - p.forcing()(x) == doctest::Approx(-p.forcing().mean()));
  }
  CHECK_THROWS(HomogenizedProblem(0.0, SourceFunction::identity()));
}

TEST_CASE("empirical abar concentrates at exp(-1/2)") {
  const Grid grid = make_grid(256.0, kGauss);
  const CirculantSampler sampler(kGauss, grid);
  std::vector<double> values;
  for (int r = 0; r < 100; ++r) values.push_back(empirical_abar(sampler.sample(derive_seed(3, 8, r)), 1.0 / 256));
  const auto est = estimate_mean(values);
  CHECK(std::abs(est.mean - std::exp(-0.5)) < 4.0 * est.stderr + 1e-3);
}

TEST_CASE("corrector: phi(0) = 0 and phi' = abar / a - 1") {
  const auto s = sample_field(kGauss, make_grid(32.0, kGauss), 4);
  const double abar = homogenized_coefficient(kGauss);
  const auto c = corrector(s, abar);
  CHECK(c.phi.front() == 0.0);
  CHECK(c.phi.size() == s.grid.n);
  for (std::size_t i = 0; i < s.grid.n; ++i) CHECK(c.dphi[i] == doctest::Approx(abar / s.a_values[i] - 1.0));
}

TEST_CASE("corrector second moment matches the exact growth law") {
  // E[phi(L)^2] = abar^2 * 2 int_0^L (L - t) Cov(1/a(t), 1/a(0)) dt, computed
  // here with its own quadrature.
  for (const auto& model : {CovarianceModel{CovarianceFamily::Gaussian, 1.0, 1.0},
                            CovarianceModel{CovarianceFamily::Cauchy, 1.0, 1.0, 0.5}}) {
    const double L = 64.0;
    const double abar = homogenized_coefficient(model);
    auto cov = [&](double t) { return std::exp(model.sigma0) * std::expm1(evaluate(model, t)); };
    const double exact = abar * abar * 2.0 *
                         oracle::gl_integrate([&](double t) { return (L - t) * cov(t); }, 0.0, L, 640, 10);
    const CirculantSampler sampler(model, make_grid(L, model));
    std::vector<double> sq;
    for (int r = 0; r < 3000; ++r) {
      const auto c = corrector(sampler.sample(derive_seed(21, 0, r)), abar);
      sq.push_back(c.phi.back() * c.phi.back());
    }
    const auto est = estimate_mean(sq);
    CAPTURE(to_string(model.family));
    CHECK(std::abs(est.mean - exact) < 4.0 * est.stderr + 0.01 * exact);
  }
}

TEST_CASE("two-scale expansion is exact up to quadrature when a is constant") {
  const auto sample = constant_sample(Grid{8.0, 257, 1.0 / 32}, 1.0);
  const auto f = SourceFunction::parse("sin:1,1");
  const HomogenizedProblem p(1.0, f);
  const auto c = corrector(sample, 1.0);
  const auto sol = solve(sample, f, 1.0 / 8);
  CHECK(two_scale_h1_error(sol, p, c) < 1e-4);
  const TwoScaleExpansion e(p, c, 1.0 / 8);
  CHECK(e(0.3) == doctest::Approx(p.ubar(0.3)));
  CHECK(e.derivative(0.3) == doctest::Approx(p.dubar(0.3)));
}

TEST_CASE("two-scale expansion needs a corrector covering [0, 1/eps]") {
  const auto sample = constant_sample(Grid{4.0, 129, 1.0 / 32}, 1.0);
  const HomogenizedProblem p(1.0, SourceFunction::identity());
  const auto c = corrector(sample, 1.0);
  CHECK_THROWS(TwoScaleExpansion(p, c, 1.0 / 8));
}

TEST_CASE("commutator has mean zero and vanishes for a == abar") {
  const double abar = std::exp(-0.5);
  CHECK(commutator(abar, abar) == doctest::Approx(0.0));
  CHECK(commutator(1.0, 1.0) == 0.0);

  const CirculantSampler sampler(kGauss, make_grid(64.0, kGauss));
  std::vector<double> j1;
  for (int r = 0; r < 500; ++r)
    j1.push_back(commutator_observable_J(sampler.sample(derive_seed(8, 6, r)), SourceFunction::constant(1.0),
                                         abar, 1.0 / 64));
  const auto est = estimate_mean(j1);
  CHECK(std::abs(est.mean) < 4.0 * est.stderr);

  const auto flat = constant_sample(Grid{16.0, 513, 1.0 / 32}, abar);
  CHECK(commutator_observable_J(flat, SourceFunction::identity(), abar, 1.0 / 16) ==
        doctest::Approx(0.0));
  CHECK(commutator_observable_K(flat, SourceFunction::identity(), SourceFunction::identity(), abar,
                                1.0 / 16) == doctest::Approx(0.0));
}

TEST_CASE("flux product ubar' vbar' = (f - mean f)(g - mean g) / abar^2") {
  const auto fp = homogenized_flux_product(SourceFunction::identity(), SourceFunction::parse("sin:1,1"), 0.5);
  CHECK(fp(0.25) == doctest::Approx((0.25 - 0.5) * 1.0 / 0.25));
}

TEST_CASE("pathwise decomposition I = c - J(ubar' vbar') + K on every realization") {
  const auto f = SourceFunction::identity();
  const auto g = SourceFunction::parse("poly:0.5,-1,2");
  for (const auto& model : {kGauss, CovarianceModel{CovarianceFamily::Cauchy, 1.0, 0.125, 0.5}}) {
    const double abar = homogenized_coefficient(model);
    for (int j : {4, 7}) {
      const double eps = std::ldexp(1.0, -j);
      const CirculantSampler sampler(model, make_grid(1.0 / eps, model));
      for (int r = 0; r < 5; ++r) {
        const auto s = sampler.sample(derive_seed(77, j, r));
        const double dx = eps * s.grid.h;
        const double c = trapz_h(f, g, dx) / abar;
        const double I = observable_I(s, f, g, eps);
        const double J = commutator_observable_J(s, homogenized_flux_product(f, g, abar), abar, eps);
        const double K = commutator_observable_K(s, f, g, abar, eps);
        // Exact in the continuum; the trapezoid rule leaves a residue of
        // order dx^2 from mean(g) versus its discrete counterpart.
        CHECK(std::abs(I - (c - J + K)) < dx * dx);
        // The opposite sign on K would leave 2K behind.
        if (std::abs(K) > 1e-6) CHECK(std::abs(I - (c - J - K)) > std::abs(K));
      }
    }
  }
}
