#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lnhom/error.hpp"
#include "lnhom/statistics.hpp"
#include "lnhom/sweep.hpp"

using namespace lnhom;

namespace {

std::vector<ObservableRecord> synthetic(const std::vector<int>& js, std::size_t n,
                                        double u_exp, double var_exp, std::uint64_t seed) {
  // err_u = eps^u_exp * |Z|-like positive noise; I has variance eps^var_exp.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<ObservableRecord> out;
  for (int j : js)
    for (std::size_t r = 0; r < n; ++r) {
      ObservableRecord rec;
      rec.j = j;
      rec.eps = std::ldexp(1.0, -j);
      rec.replicate = r;
      rec.err_u_probe = std::pow(rec.eps, u_exp);
      rec.err_du_probe = std::pow(rec.eps, u_exp) * (1.0 + 0.1 * (r % 2));
      rec.err_twoscale_h1 = rec.err_u_probe;
      rec.I = 0.3 + std::pow(rec.eps, 0.5 * var_exp) * z(rng);
      rec.K = 0.0;
      out.push_back(rec);
    }
  return out;
}

}  // namespace

TEST_CASE("sample variance and the deterministic column") {
  CHECK(sample_variance(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(5.0 / 3.0));
  CHECK(sample_variance(std::vector<double>(50, 2.5)) == 0.0);
  const auto est = estimate_mean(std::vector<double>(50, 2.5));
  CHECK(est.variance == 0.0);
  CHECK(est.stderr == 0.0);
  CHECK(est.mean == 2.5);
  CHECK_THROWS_AS(sample_variance(std::vector<double>{1.0}), Error);
}

TEST_CASE("MCEstimate stderr = sqrt(variance / n)") {
  const auto est = estimate_mean(std::vector<double>{1, 4, 2, 8, 5, 7});
  CHECK(est.n == 6);
  CHECK(est.stderr == doctest::Approx(std::sqrt(est.variance / 6)));
  CHECK_THROWS_AS(estimate_mean(std::vector<double>{1.0}), Error);
}

TEST_CASE("jackknife stderr matches explicit leave-one-out recomputation") {
  std::mt19937_64 rng(7);
  std::exponential_distribution<double> d;
  std::vector<double> x(60);
  for (auto& v : x) v = d(rng);
  std::vector<double> loo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> rest;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (k != i) rest.push_back(x[k]);
    loo.push_back(sample_variance(rest));
  }
  double m = 0.0;
  for (double v : loo) m += v;
  m /= loo.size();
  double acc = 0.0;
  for (double v : loo) acc += (v - m) * (v - m);
  const double brute = std::sqrt((x.size() - 1.0) / x.size() * acc);
  CHECK(jackknife_variance_stderr(x) == doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("oscillation fit recovers exponents from synthetic records") {
  const auto recs = synthetic({4, 5, 6, 7, 8}, 20, 0.25, 0.5, 1);
  const CovarianceModel cauchy{CovarianceFamily::Cauchy, 1.0, 1.0, 0.5};
  const auto fit = oscillation_rate_fit(recs, Column::ErrU, cauchy);
  CHECK(fit.fit.slope == doctest::Approx(0.25));
  CHECK(fit.expected_exponent == 0.25);
  CHECK(fit.eps.size() == 5);
  CHECK_FALSE(fit.insufficient_replicates);
  CHECK(oscillation_rate_fit(recs, Column::ErrDu, cauchy).fit.slope == doctest::Approx(0.25));
}

TEST_CASE("variance fit recovers the exponent within noise") {
  const auto recs = synthetic({4, 5, 6, 7, 8, 9, 10}, 4000, 0.5, 1.0, 2);
  const auto fit = fluctuation_variance_fit(recs, Column::I, CovarianceModel{});
  CHECK(fit.expected_exponent == 1.0);
  CHECK(std::abs(fit.fit.slope - 1.0) < 0.05);
}

TEST_CASE("fits on a deterministic column are degenerate") {
  const auto recs = synthetic({4, 5, 6}, 10, 0.5, 1.0, 3);
  try {
    power_variance_fit(recs, Column::K, 2.0);
    FAIL("zero variance accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFit);
  }
}

TEST_CASE("single replicate per eps is flagged") {
  const auto recs = synthetic({4, 5, 6}, 1, 0.5, 1.0, 4);
  const auto fit = oscillation_rate_fit(recs, Column::ErrU, CovarianceModel{});
  CHECK(fit.insufficient_replicates);
  CHECK(fluctuation_variance_fit(recs, Column::I, CovarianceModel{}).insufficient_replicates);
}

TEST_CASE("empirical sigma_eps: scaling, zero for a deterministic problem, size check") {
  const auto recs = synthetic({10}, 2000, 0.5, 1.0, 5);
  const auto est = empirical_sigma_eps(recs, RateModel{RateKind::PiBetaSquared, 2.0});
  CHECK(std::abs(est.mean - 1.0) < 4.0 * est.stderr);
  CHECK(est.n == 2000);
  CHECK(est.stderr == doctest::Approx(std::sqrt(est.variance / 2000.0)));

  auto flat = recs;
  for (auto& r : flat) r.I = 0.25;
  CHECK(empirical_sigma_eps(flat, RateModel{}).mean == 0.0);
  CHECK_THROWS_AS(empirical_sigma_eps(std::span(recs).first(99), RateModel{}), Error);
}

TEST_CASE("estimators ignore record order (property)") {
  auto recs = synthetic({4, 5, 6, 7}, 50, 0.5, 1.0, 6);
  const auto a = fluctuation_variance_fit(recs, Column::I, CovarianceModel{});
  std::mt19937_64 rng(1);
  std::shuffle(recs.begin(), recs.end(), rng);
  const auto b = fluctuation_variance_fit(recs, Column::I, CovarianceModel{});
  CHECK(a.values == b.values);
  CHECK(a.fit.slope == b.fit.slope);
}

TEST_CASE("pathwise check on a deterministic problem gives zeros") {
  SweepConfig cfg;
  cfg.model.sigma0 = 0.0;
  cfg.eps_exponents = {4, 5, 6};
  cfg.replicates = 3;
  const auto recs = run_sweep(cfg);
  const auto p = pathwise_check(recs, cfg);
  CHECK(p.deterministic_part == doctest::Approx(1.0 / 12.0).epsilon(1e-3));
  for (const auto& row : p.rows) {
    CHECK(row.rms_residual < 1e-12);
    CHECK(row.rms_K < 1e-12);
  }
}

TEST_CASE("commutator and observable limiting variances coincide to 1e-10") {
  SweepConfig cfg;
  cfg.model = CovarianceModel{CovarianceFamily::Gaussian, 1.0, 0.125};
  for (const char* g : {"poly:0,1", "sin:2,1", "poly:1,2,-3"}) {
    cfg.g = SourceFunction::parse(g);
    const auto p = pathwise_check({}, cfg);
    CHECK(p.identity_rel_error <= 1e-10);
    CHECK(p.sigma2 > 0.0);
  }
  cfg.model = CovarianceModel{CovarianceFamily::Cauchy, 1.0, 0.125, 0.5};
  const auto p = pathwise_check({}, cfg);
  CHECK(p.identity_rel_error <= 1e-10);
  CHECK(p.commutator_sigma2 == doctest::Approx(p.sigma2).epsilon(1e-10));
}
