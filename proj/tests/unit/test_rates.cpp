#include <cmath>
#include <vector>

#include "doctest.h"
#include "lnhom/error.hpp"
#include "lnhom/rates.hpp"

using namespace lnhom;

TEST_CASE("rate exponents") {
  CHECK(RateModel{RateKind::PiBeta, 0.5}.exponent() == 0.25);
  CHECK(RateModel{RateKind::PiBeta, 2.0}.exponent() == 0.5);
  CHECK(RateModel{RateKind::PiBeta, 1.0}.exponent() == 0.5);
  CHECK(RateModel{RateKind::PiBetaSquared, 0.5}.exponent() == 0.5);
  CHECK(RateModel{RateKind::PiBetaSquared, 2.0}.exponent() == 1.0);
  CHECK(RateModel{RateKind::PiBigBeta, 0.25}.exponent() == 0.25);
  CHECK(RateModel{RateKind::PiBigBeta, 0.75}.exponent() == doctest::Approx(0.25));
  const RateModel big{RateKind::PiBigBeta, 1.5};
  CHECK_THROWS_AS(big.exponent(), Error);
}

TEST_CASE("squaring doubles the exponent (property)") {
  for (double beta : {0.1, 0.3, 0.5, 0.9, 1.0, 1.5, 4.0})
    CHECK(RateModel{RateKind::PiBetaSquared, beta}.exponent() ==
          doctest::Approx(2.0 * RateModel{RateKind::PiBeta, beta}.exponent()));
  for (double eps : {0.5, 1e-2, 1e-4})
    for (double beta : {0.5, 1.0, 2.0})
      CHECK(RateModel{RateKind::PiBetaSquared, beta}.value(eps) ==
            doctest::Approx(std::pow(RateModel{RateKind::PiBeta, beta}.value(eps), 2)));
}

TEST_CASE("rate values carry the logarithm at beta = 1") {
  const double eps = std::ldexp(1.0, -10);
  CHECK(RateModel{RateKind::PiBeta, 1.0}.value(eps) ==
        doctest::Approx(std::sqrt(eps) * std::sqrt(10 * std::log(2.0))));
  CHECK(RateModel{RateKind::PiBeta, 0.5}.value(eps) == doctest::Approx(std::pow(eps, 0.25)));
  CHECK(RateModel{RateKind::PiBeta, 3.0}.value(eps) == doctest::Approx(std::sqrt(eps)));
  CHECK(RateModel{RateKind::PiBeta, 1.0}.has_log_factor());
  CHECK_FALSE(RateModel{RateKind::PiBeta, 0.5}.has_log_factor());
  CHECK(RateModel{RateKind::PiBigBeta, 0.5}.has_log_factor());
  CHECK(RateModel{RateKind::PiBigBeta, 1.0}.value(eps) == doctest::Approx(1.0 / (10 * std::log(2.0))));
}

TEST_CASE("model-to-rate mapping") {
  CHECK(oscillation_rate(CovarianceModel{}).exponent() == 0.5);
  CHECK(oscillation_rate(CovarianceModel{CovarianceFamily::Cauchy, 1, 1, 0.5}).exponent() == 0.25);
  CHECK(variance_rate(CovarianceModel{CovarianceFamily::Cauchy, 1, 1, 0.5}).exponent() == 0.5);
  CHECK(oscillation_rate(CovarianceModel{CovarianceFamily::Cauchy, 1, 1, 1.0}).has_log_factor());
}

TEST_CASE("least squares recovers an exact line") {
  const std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(-2.5 * v + 1.25);
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(-2.5));
  CHECK(fit.intercept == doctest::Approx(1.25));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.slope_stderr == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("slope stderr matches the textbook formula") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{0.1, 0.9, 2.2, 2.8};
  const auto fit = fit_line(x, y);
  // By hand: sxx = 5, sxy = 4.7.
  double sse = 0.0;
  for (int i = 0; i < 4; ++i) sse += std::pow(y[i] - fit.slope * x[i] - fit.intercept, 2);
  CHECK(fit.slope == doctest::Approx(0.94));
  CHECK(fit.slope_stderr == doctest::Approx(std::sqrt(sse / 2 / 5)));
}

TEST_CASE("fit_rate on synthetic power laws") {
  std::vector<double> eps, values;
  for (int j = 4; j <= 10; ++j) {
    eps.push_back(std::ldexp(1.0, -j));
    values.push_back(3.0 * std::pow(eps.back(), 0.25));
  }
  CHECK(fit_rate(eps, values, RateModel{RateKind::PiBeta, 0.5}).slope == doctest::Approx(0.25));

  // With the log-corrected abscissa, data proportional to the rate fit slope 1.
  const RateModel log_rate{RateKind::PiBeta, 1.0};
  std::vector<double> lv;
  for (double e : eps) lv.push_back(0.7 * log_rate.value(e));
  const auto fit = fit_rate(eps, lv, log_rate);
  CHECK(fit.slope == doctest::Approx(1.0));
  CHECK(fit.r2 == doctest::Approx(1.0));

  CHECK_THROWS_AS(fit_rate(std::vector<double>{0.5, 0.25}, std::vector<double>{1, 2}, log_rate), Error);
  std::vector<double> zeros(eps.size(), 0.0);
  try {
    fit_rate(eps, zeros, log_rate);
    FAIL("zero values accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFit);
  }
}
