#include "lnhom/normality.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>

#include "lnhom/error.hpp"

namespace lnhom {
namespace {

double normal_pdf(double x) noexcept { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double normal_quantile(double p) { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p); }

// Antiderivative of Phi vanishing at -inf.
double phi_primitive(double t) noexcept { return t * normal_cdf(t) + normal_pdf(t); }

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// int_a^b |p - Phi(t)| dt.
double abs_gap_integral(double p, double a, double b) {
  if (b <= a) return 0.0;
  auto above = [&](double lo, double hi) {  // Phi >= p on [lo, hi]
    return phi_primitive(hi) - phi_primitive(lo) - p * (hi - lo);
  };
  auto below = [&](double lo, double hi) { return -above(lo, hi); };
  const double q = normal_quantile(p);
  if (q <= a) return above(a, b);
  if (q >= b) return below(a, b);
  return below(a, q) + above(q, b);
}

}  // namespace

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

NormalityReport normality_distances(std::vector<double> z) {
  if (z.size() < 2) throw Error(ErrorCode::DegenerateSample, "normality: need >= 2 samples");
  std::sort(z.begin(), z.end());
  const std::size_t n = z.size();
  const double nd = static_cast<double>(n);
  NormalityReport out;
  out.n = n;

  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = normal_cdf(z[i]);
    out.ks = std::max({out.ks, (i + 1) / nd - cdf, cdf - i / nd});
  }

  // Tails: F_n = 0 left of z_1, F_n = 1 right of z_n.
  double w1 = phi_primitive(z.front()) + phi_primitive(-z.back());
  for (std::size_t k = 1; k < n; ++k) w1 += abs_gap_integral(k / nd, z[k - 1], z[k]);
  out.w1 = w1;

  const double iqr = quantile_sorted(z, 0.75) - quantile_sorted(z, 0.25);
  const double range = z.back() - z.front();
  if (range > 0.0) {
    double width = 2.0 * iqr / std::cbrt(nd);
    if (!(width > 0.0)) width = range / std::sqrt(nd);
    const auto bins = static_cast<std::size_t>(
        std::clamp(std::ceil(range / width), 1.0, 100000.0));
    width = range / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double v : z) {
      auto b = static_cast<std::size_t>((v - z.front()) / width);
      counts[std::min(b, bins - 1)]++;
    }
    double tv = normal_cdf(z.front()) + (1.0 - normal_cdf(z.back()));
    for (std::size_t b = 0; b < bins; ++b) {
      const double lo = z.front() + b * width;
      const double hi = b + 1 == bins ? z.back() : lo + width;
      tv += std::abs(counts[b] / nd - (normal_cdf(hi) - normal_cdf(lo)));
    }
    out.tv_hist = 0.5 * tv;
  } else {
    out.tv_hist = 1.0;
  }
  return out;
}

NormalityReport normality_test(std::span<const double> samples, double scale) {
  if (samples.size() < 2) throw Error(ErrorCode::DegenerateSample, "normality: need >= 2 samples");
  if (!(scale > 0.0)) throw Error(ErrorCode::DegenerateSample, "normality: reference scale must be > 0");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  if (ss == 0.0) throw Error(ErrorCode::DegenerateSample, "normality: sample variance is zero");
  std::vector<double> z(samples.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (samples[i] - mean) / scale;
  return normality_distances(std::move(z));
}

}  // namespace lnhom
