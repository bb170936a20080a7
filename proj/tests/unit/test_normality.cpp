#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lnhom/error.hpp"
#include "lnhom/normality.hpp"
#include "oracles.hpp"

using namespace lnhom;

namespace {

std::vector<double> normal_draws(std::size_t n, double mean, double sd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(mean, sd);
  std::vector<double> out(n);
  for (auto& v : out) v = d(rng);
  return out;
}

double brute_w1(std::vector<double> z) {
  // The empirical CDF is constant between order statistics; integrate each
  // piece separately so the jumps never fall inside a quadrature panel.
  std::sort(z.begin(), z.end());
  std::vector<double> edges{-12.0};
  edges.insert(edges.end(), z.begin(), z.end());
  edges.push_back(12.0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (edges[k + 1] <= edges[k]) continue;
    const double p = double(k) / z.size();
    total += oracle::gl_integrate([&](double t) { return std::abs(p - normal_cdf(t)); }, edges[k],
                                  edges[k + 1], 200, 10);
  }
  return total;
}

}  // namespace

TEST_CASE("normal CDF reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021));
  CHECK(normal_cdf(-1.0) == doctest::Approx(1.0 - normal_cdf(1.0)));
  CHECK(ks_critical_1pct(10000) == doctest::Approx(0.0163));
}

TEST_CASE("null calibration: draws from the reference law pass") {
  const auto x = normal_draws(10000, 3.0, 2.0, 1);
  const auto r = normality_test(x, 2.0);
  CHECK(r.n == 10000);
  CHECK(r.ks < ks_critical_1pct(10000));
  CHECK(r.w1 < 0.03);
  CHECK(r.tv_hist < 0.1);
}

TEST_CASE("a wrong scale is detected") {
  const auto x = normal_draws(10000, 0.0, 1.5, 2);
  const auto r = normality_test(x, 1.0);
  CHECK(r.ks > ks_critical_1pct(10000));
  CHECK(r.w1 > 0.3);
}

TEST_CASE("heavy tails are detected") {
  std::mt19937_64 rng(5);
  std::student_t_distribution<double> t(2.0);
  std::vector<double> x(10000);
  for (auto& v : x) v = t(rng);
  std::vector<double> centered(x);
  const auto r = normality_distances(centered);
  CHECK(r.ks > ks_critical_1pct(10000));
}

TEST_CASE("KS matches a brute-force supremum") {
  const std::vector<double> z{-1.2, -0.3, 0.1, 0.4, 2.0};
  double sup = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double c = normal_cdf(z[i]);
    sup = std::max({sup, std::abs(double(i + 1) / z.size() - c), std::abs(double(i) / z.size() - c)});
  }
  CHECK(normality_distances(z).ks == doctest::Approx(sup));
}

TEST_CASE("exact W1 agrees with numerical integration of |F_n - Phi|") {
  for (const auto& z : {std::vector<double>{-0.5, 0.5}, std::vector<double>{0.0, 0.0, 3.0},
                        normal_draws(200, 0.2, 1.1, 8)}) {
    CHECK(normality_distances(z).w1 == doctest::Approx(brute_w1(z)).epsilon(1e-6));
  }
  // A point mass at 0: W1 = E|Z| = sqrt(2/pi).
  CHECK(normality_distances(std::vector<double>(10, 0.0)).w1 == doctest::Approx(std::sqrt(2.0 / M_PI)));
}

TEST_CASE("distances are invariant under reordering (property)") {
  auto x = normal_draws(500, 0.0, 1.0, 4);
  const auto a = normality_distances(x);
  std::reverse(x.begin(), x.end());
  const auto b = normality_distances(x);
  CHECK(a.ks == b.ks);
  CHECK(a.w1 == b.w1);
  CHECK(a.tv_hist == b.tv_hist);
}

TEST_CASE("degenerate samples") {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  const std::vector<double> flat(100, 1.0);
  CHECK(code([&] { normality_test(flat, 1.0); }) == ErrorCode::DegenerateSample);
  CHECK(code([&] { normality_test(normal_draws(10, 0, 1, 1), 0.0); }) == ErrorCode::DegenerateSample);
  CHECK(code([&] { normality_test(std::vector<double>{1.0}, 1.0); }) == ErrorCode::DegenerateSample);
}
