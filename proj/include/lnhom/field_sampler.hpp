#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "lnhom/covariance.hpp"
#include "lnhom/estimate.hpp"

namespace lnhom {

/// Uniform grid on [0, length] with n points.
struct Grid {
  double length = 1.0;
  std::size_t n = 2;
  double h = 1.0;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Smallest grid on [0, length] with at least points_per_corrlen nodes per ell.
Grid make_grid(double length, const CovarianceModel& model, int points_per_corrlen = 4);

struct SamplerOptions {
  int min_points_per_corrlen = 4;  // h <= ell / min_points_per_corrlen
  double psd_tolerance = 1e-6;     // admissible relative negative spectral mass
  int max_pad_factor = 64;         // largest ring size as a multiple of the minimal one

  friend bool operator==(const SamplerOptions&, const SamplerOptions&) = default;
};

/// One realization of G on a grid and the coefficient a = exp(G).
struct FieldSample {
  Grid grid;
  std::vector<double> g_values;
  std::vector<double> a_values;
  std::uint64_t seed = 0;

  /// Every stride-th node; the result is a realization on the coarser grid.
  [[nodiscard]] FieldSample subsample(std::size_t stride) const;
};

/// Constant-coefficient sample (a == value everywhere); G = log(value).
FieldSample constant_sample(const Grid& grid, double value);

/// Circulant-embedding sampler for a fixed (model, grid). The spectrum is
/// computed once; sample() is const and safe to call from many threads.
class CirculantSampler {
 public:
  CirculantSampler(const CovarianceModel& model, const Grid& grid, SamplerOptions options = {});
  ~CirculantSampler();
  CirculantSampler(CirculantSampler&&) noexcept;
  CirculantSampler& operator=(CirculantSampler&&) noexcept;
  CirculantSampler(const CirculantSampler&) = delete;
  CirculantSampler& operator=(const CirculantSampler&) = delete;

  [[nodiscard]] FieldSample sample(std::uint64_t seed) const;

  [[nodiscard]] const Grid& grid() const noexcept;
  [[nodiscard]] std::size_t ring_size() const noexcept;
  /// Relative negative spectral mass that was clamped to zero.
  [[nodiscard]] double clamped_mass() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around CirculantSampler.
FieldSample sample_field(const CovarianceModel& model, const Grid& grid, std::uint64_t seed,
                         SamplerOptions options = {});

struct MomentEstimate {
  MCEstimate estimate;  // E[a^p]; stderr from per-replicate spatial means
  double reference = 0.0;  // exp(C(0) p^2 / 2)
};

/// Estimate of E[a^p] over all nodes of all replicates, |p| <= 4, p != 0.
MomentEstimate coefficient_moments(std::span<const FieldSample> ensemble, int p,
                                   const CovarianceModel& model);

/// CSV dump with header x,g,a.
void write_field_csv(std::ostream& out, const FieldSample& sample);

}  // namespace lnhom
