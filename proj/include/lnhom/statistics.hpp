#pragma once

#include <span>
#include <string>
#include <vector>

#include "lnhom/estimate.hpp"
#include "lnhom/normality.hpp"
#include "lnhom/rates.hpp"
#include "lnhom/sweep.hpp"

namespace lnhom {

enum class Column { ErrU, ErrDu, ErrTwoScale, I, JUv, JPsi, K };

std::string_view to_string(Column column) noexcept;
double value_of(const ObservableRecord& record, Column column) noexcept;
std::vector<double> column_values(std::span<const ObservableRecord> records, Column column);

/// Slope report in the shape written to JSON.
struct RateFitReport {
  std::string quantity;
  LineFit fit;
  double expected_exponent = 0.0;
  bool insufficient_replicates = false;
  std::vector<double> eps;
  std::vector<double> values;  // RMS or variance per eps
};

/// Root mean square of an error column per eps, fitted against pi_beta.
RateFitReport oscillation_rate_fit(const std::vector<ObservableRecord>& records, Column column,
                                   const CovarianceModel& model);

/// Sample variance per eps of an observable column, fitted against pi_beta^2.
RateFitReport fluctuation_variance_fit(const std::vector<ObservableRecord>& records, Column column,
                                       const CovarianceModel& model);

/// Sample variance per eps fitted against a pure power of eps with the given
/// expected exponent (used for K, whose variance decays like eps^2).
RateFitReport power_variance_fit(const std::vector<ObservableRecord>& records, Column column,
                                 double expected_exponent);

/// Sample variance (n - 1 denominator); 0 for constant input. Requires n >= 2.
double sample_variance(std::span<const double> values);

/// Jackknife standard error of the sample variance.
double jackknife_variance_stderr(std::span<const double> values);

/// Var(I_eps) / rate(eps)^2 at one eps, with jackknife standard error.
/// mean is sigma_eps^2; variance is chosen so that stderr = sqrt(variance / n).
/// Requires at least 100 records.
MCEstimate empirical_sigma_eps(std::span<const ObservableRecord> records_at_eps,
                               const RateModel& variance_rate);

struct PathwiseRow {
  int j = 0;
  double eps = 0.0;
  double rms_residual = 0.0;  // RMS of (I - c + J_uv) / sqrt(eps)
  double rms_literal = 0.0;   // RMS of (I - J_uv) / sqrt(eps)
  double rms_K = 0.0;         // RMS of K / sqrt(eps)
};

struct PathwiseReport {
  double deterministic_part = 0.0;  // c = (1/abar) int (f - mean f)(g - mean g)
  std::vector<PathwiseRow> rows;
  LineFit residual_fit;             // log2 rms_residual against log2 eps
  bool fit_available = false;
  double commutator_sigma2 = 0.0;   // limiting variance of J_eps(ubar' vbar')
  double sigma2 = 0.0;              // limiting variance of I_eps
  double identity_rel_error = 0.0;
};

/// I_eps splits pathwise into c - J_eps(ubar' vbar') + K_eps; the residual
/// after removing c and the commutator term is K_eps, of order eps.
PathwiseReport pathwise_check(const std::vector<ObservableRecord>& records,
                              const SweepConfig& config);

}  // namespace lnhom
