#include "lnhom/statistics.hpp"

#include <cmath>

#include "lnhom/error.hpp"
#include "lnhom/field_sampler.hpp"
#include "lnhom/homogenization.hpp"
#include "lnhom/limiting_variance.hpp"
#include "lnhom/quadrature.hpp"

namespace lnhom {
namespace {

struct PerEps {
  std::vector<double> eps;
  std::vector<std::vector<double>> values;
};

PerEps group(const std::vector<ObservableRecord>& records, Column column) {
  PerEps out;
  for (int j : exponents_in(records)) {
    const auto at = select_j(records, j);
    out.eps.push_back(at.front().eps);
    out.values.push_back(column_values(at, column));
  }
  return out;
}

double root_mean_square(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

RateFitReport variance_report(const std::vector<ObservableRecord>& records, Column column,
                              const RateModel& rate, std::string quantity) {
  const PerEps grouped = group(records, column);
  RateFitReport report;
  report.quantity = std::move(quantity);
  report.expected_exponent = rate.exponent();
  report.eps = grouped.eps;
  for (const auto& v : grouped.values) {
    if (v.size() < 2) {
      report.insufficient_replicates = true;
      report.values.push_back(0.0);
    } else {
      report.values.push_back(sample_variance(v));
    }
  }
  if (!report.insufficient_replicates) report.fit = fit_rate(report.eps, report.values, rate);
  return report;
}

}  // namespace

std::string_view to_string(Column column) noexcept {
  switch (column) {
    case Column::ErrU: return "err_u_L2probe";
    case Column::ErrDu: return "err_du_probe";
    case Column::ErrTwoScale: return "err_twoscale_H1";
    case Column::I: return "I";
    case Column::JUv: return "J_uv";
    case Column::JPsi: return "J_psi";
    case Column::K: return "K";
  }
  return "?";
}

double value_of(const ObservableRecord& r, Column column) noexcept {
  switch (column) {
    case Column::ErrU: return r.err_u_probe;
    case Column::ErrDu: return r.err_du_probe;
    case Column::ErrTwoScale: return r.err_twoscale_h1;
    case Column::I: return r.I;
    case Column::JUv: return r.J_uv;
    case Column::JPsi: return r.J_psi;
    case Column::K: return r.K;
  }
  return 0.0;
}

std::vector<double> column_values(std::span<const ObservableRecord> records, Column column) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(value_of(r, column));
  return out;
}

RateFitReport oscillation_rate_fit(const std::vector<ObservableRecord>& records, Column column,
                                   const CovarianceModel& model) {
  const RateModel rate = oscillation_rate(model);
  const PerEps grouped = group(records, column);
  RateFitReport report;
  report.quantity = "rms_" + std::string(to_string(column));
  report.expected_exponent = rate.exponent();
  report.eps = grouped.eps;
  for (const auto& v : grouped.values) {
    report.values.push_back(root_mean_square(v));
    if (v.size() < 2) report.insufficient_replicates = true;
  }
  report.fit = fit_rate(report.eps, report.values, rate);
  return report;
}

RateFitReport fluctuation_variance_fit(const std::vector<ObservableRecord>& records, Column column,
                                       const CovarianceModel& model) {
  return variance_report(records, column, variance_rate(model),
                         "var_" + std::string(to_string(column)));
}

RateFitReport power_variance_fit(const std::vector<ObservableRecord>& records, Column column,
                                 double expected_exponent) {
  // Any log-free rate model regresses against log2(eps).
  auto report = variance_report(records, column, RateModel{RateKind::PiBetaSquared, 2.0},
                                "var_" + std::string(to_string(column)));
  report.expected_exponent = expected_exponent;
  return report;
}

double sample_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorCode::DegenerateSample, "sample variance needs >= 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(n - 1);
}

double jackknife_variance_stderr(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) throw Error(ErrorCode::DegenerateSample, "jackknife needs >= 3 values");
  const double nd = static_cast<double>(n);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= nd;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  // Leave-one-out sums of squares: SS - n/(n-1) (x_i - mean)^2.
  std::vector<double> loo(n);
  double loo_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - mean;
    loo[i] = (ss - nd / (nd - 1.0) * d * d) / (nd - 2.0);
    loo_mean += loo[i];
  }
  loo_mean /= nd;
  double acc = 0.0;
  for (double v : loo) acc += (v - loo_mean) * (v - loo_mean);
  return std::sqrt((nd - 1.0) / nd * acc);
}

MCEstimate empirical_sigma_eps(std::span<const ObservableRecord> records_at_eps,
                               const RateModel& variance_rate) {
  if (records_at_eps.size() < 100)
    throw Error(ErrorCode::InvalidArgument, "empirical_sigma_eps needs >= 100 replicates");
  const double eps = records_at_eps.front().eps;
  for (const auto& r : records_at_eps)
    if (r.eps != eps) throw Error(ErrorCode::InvalidArgument, "records mix several eps values");
  const auto values = column_values(records_at_eps, Column::I);
  const double scale = variance_rate.value(eps);
  MCEstimate out;
  out.n = values.size();
  out.mean = sample_variance(values) / scale;
  out.stderr = jackknife_variance_stderr(values) / scale;
  out.variance = out.stderr * out.stderr * static_cast<double>(out.n);
  return out;
}

PathwiseReport pathwise_check(const std::vector<ObservableRecord>& records,
                              const SweepConfig& config) {
  const double abar = homogenized_coefficient(config.model);
  const double fm = config.f.mean();
  const double gm = config.g.mean();
  auto h = [&](double x) { return (config.f(x) - fm) * (config.g(x) - gm); };
  const auto flux = homogenized_flux_product(config.f, config.g, abar);

  PathwiseReport report;
  report.deterministic_part = quad::gauss_kronrod(h, 0.0, 1.0, 1e-13, 1e-300).value / abar;

  const double h2 = quad::gauss_kronrod([&](double x) { return h(x) * h(x); }, 0.0, 1.0, 1e-13,
                                        1e-300).value;
  const double flux2 = quad::gauss_kronrod([&](double x) { return flux(x) * flux(x); }, 0.0, 1.0,
                                           1e-13, 1e-300).value;
  // The identity concerns the integrands (h = abar^2 ubar' vbar' pointwise), so
  // it is measured without the covariance factor, which is common to both sides
  // in every decay regime.
  const double ratio = h2 > 0.0 ? std::pow(abar, 4) * flux2 / h2 : 0.0;
  report.identity_rel_error =
      h2 > 0.0 ? std::abs(ratio - 1.0) : std::abs(std::pow(abar, 4) * flux2);
  report.sigma2 = limiting_variance(config.model, config.f, config.g).sigma2;
  report.commutator_sigma2 = ratio * report.sigma2;

  std::vector<double> eps, rms;
  bool all_positive = true;
  for (int j : exponents_in(records)) {
    const auto at = select_j(records, j);
    PathwiseRow row;
    row.j = j;
    row.eps = at.front().eps;
    const double root = std::sqrt(row.eps);
    // c on the same trapezoid grid as I, so that a constant coefficient
    // leaves no quadrature residue.
    const double dx =
        row.eps * make_grid(1.0 / row.eps, config.model, config.points_per_corrlen).h;
    std::vector<double> hv(static_cast<std::size_t>(std::lround(1.0 / dx)) + 1);
    for (std::size_t i = 0; i < hv.size(); ++i) hv[i] = h(static_cast<double>(i) * dx);
    const double c = quad::trapezoid(hv, dx) / abar;
    std::vector<double> residual, literal, k;
    for (const auto& r : at) {
      residual.push_back((r.I - c + r.J_uv) / root);
      literal.push_back((r.I - r.J_uv) / root);
      k.push_back(r.K / root);
    }
    row.rms_residual = root_mean_square(residual);
    row.rms_literal = root_mean_square(literal);
    row.rms_K = root_mean_square(k);
    report.rows.push_back(row);
    eps.push_back(row.eps);
    rms.push_back(row.rms_residual);
    all_positive = all_positive && row.rms_residual > 0.0;
  }
  if (all_positive && eps.size() >= 3) {
    report.residual_fit = fit_rate(eps, rms, RateModel{RateKind::PiBeta, 2.0});
    report.fit_available = true;
  }
  return report;
}

}  // namespace lnhom
