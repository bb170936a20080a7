#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lnhom/covariance.hpp"
#include "lnhom/field_sampler.hpp"
#include "lnhom/source_function.hpp"

namespace lnhom {

/// One Monte Carlo experiment over eps = 2^-j for each listed j.
struct SweepConfig {
  CovarianceModel model;
  SourceFunction f = SourceFunction::identity();
  SourceFunction g = SourceFunction::identity();
  SourceFunction psi = SourceFunction::identity();
  std::vector<int> eps_exponents{4, 5, 6, 7, 8, 9, 10};
  std::size_t replicates = 1000;
  std::uint64_t base_seed = 20240601;
  double probe = 0.5;  // physical point for pointwise errors, snapped to the nearest node
  int points_per_corrlen = 4;
  SamplerOptions sampler;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Throws Config when exponents are not strictly increasing, fewer than 3,
/// outside [0, 30], or when replicates == 0 or the probe lies outside (0,1).
void validate(const SweepConfig& config);

/// Outputs of one (j, replicate) task.
struct ObservableRecord {
  int j = 0;
  double eps = 1.0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  double err_u_probe = 0.0;   // |u_eps(x0) - ubar(x0)|
  double err_du_probe = 0.0;  // |u_eps'(x0) - ubar'(x0) abar / a(x0/eps)|
  double err_twoscale_h1 = 0.0;
  double I = 0.0;
  double J_uv = 0.0;   // J_eps(ubar' vbar')
  double J_psi = 0.0;  // J_eps(psi)
  double K = 0.0;
  double runtime_ms = 0.0;  // 0 unless timing was requested

  friend bool operator==(const ObservableRecord&, const ObservableRecord&) = default;
};

/// Computes one task. Pure in (config, j, replicate).
ObservableRecord run_task(const SweepConfig& config, const CirculantSampler& sampler, int j,
                          std::size_t replicate);

struct SweepOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool record_runtime = false;
};

/// Every (j, r) task, sorted by (j, r). Scheduling never changes the result.
/// Task failures rethrow as Error with the same code and the (j, r) tag.
std::vector<ObservableRecord> run_sweep(const SweepConfig& config, SweepOptions options = {});

/// Records with the given exponent, in replicate order.
std::vector<ObservableRecord> select_j(const std::vector<ObservableRecord>& records, int j);
std::vector<int> exponents_in(const std::vector<ObservableRecord>& records);

}  // namespace lnhom
