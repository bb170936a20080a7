#include "lnhom/field_sampler.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <random>

#include "lnhom/error.hpp"
#include "lnhom/format.hpp"

namespace lnhom {
namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t m)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

std::size_t next_pow2(std::size_t v) {
  std::size_t m = 1;
  while (m < v) m <<= 1;
  return m;
}

}  // namespace

Grid make_grid(double length, const CovarianceModel& model, int points_per_corrlen) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "make_grid: length must be > 0");
  if (points_per_corrlen < 1)
    throw Error(ErrorCode::InvalidArgument, "make_grid: points_per_corrlen must be >= 1");
  const double cells = std::ceil(length * points_per_corrlen / model.ell - 1e-9);
  const auto intervals = static_cast<std::size_t>(std::max(1.0, cells));
  return {length, intervals + 1, length / static_cast<double>(intervals)};
}

FieldSample FieldSample::subsample(std::size_t stride) const {
  if (stride == 0 || (grid.n - 1) % stride != 0)
    throw Error(ErrorCode::InvalidArgument, "subsample: stride must divide n - 1");
  FieldSample out;
  out.seed = seed;
  out.grid = {grid.length, (grid.n - 1) / stride + 1, grid.h * static_cast<double>(stride)};
  for (std::size_t i = 0; i < grid.n; i += stride) {
    out.g_values.push_back(g_values[i]);
    out.a_values.push_back(a_values[i]);
  }
  return out;
}

FieldSample constant_sample(const Grid& grid, double value) {
  if (!(value > 0.0)) throw Error(ErrorCode::InvalidArgument, "constant_sample: value must be > 0");
  FieldSample out;
  out.grid = grid;
  out.g_values.assign(grid.n, std::log(value));
  out.a_values.assign(grid.n, value);
  return out;
}

struct CirculantSampler::Impl {
  Grid grid;
  std::size_t m = 0;
  std::vector<double> amplitude;  // sqrt(lambda_k / m)
  double clamped = 0.0;
  bool zero_field = false;
  fftw_plan plan = nullptr;

  ~Impl() {
    if (plan != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
  }
};

CirculantSampler::CirculantSampler(const CovarianceModel& model, const Grid& grid,
                                   SamplerOptions options)
    : impl_(std::make_unique<Impl>()) {
  validate(model);
  if (grid.n < 2) throw Error(ErrorCode::InvalidArgument, "sampler: grid needs n >= 2");
  if (std::abs(grid.h * static_cast<double>(grid.n - 1) - grid.length) > 1e-9 * grid.length)
    throw Error(ErrorCode::InvalidArgument, "sampler: grid spacing inconsistent with length");
  if (model.sigma0 > 0.0 &&
      grid.h > model.ell / options.min_points_per_corrlen * (1.0 + 1e-12))
    throw Error(ErrorCode::InvalidArgument,
                "sampler: grid too coarse (h must be <= ell / points_per_corrlen)");
  impl_->grid = grid;

  const std::size_t m_min = next_pow2(2 * (grid.n - 1));
  if (model.sigma0 == 0.0) {
    impl_->zero_field = true;
    impl_->m = m_min;
    return;
  }

  const std::size_t m_max = m_min * static_cast<std::size_t>(std::max(1, options.max_pad_factor));
  for (std::size_t m = m_min;; m *= 2) {
    FftwBuffer row(m);
    FftwBuffer spectrum(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double lag = static_cast<double>(std::min(k, m - k)) * grid.h;
      row.data[k][0] = evaluate(model, lag);
      row.data[k][1] = 0.0;
    }
    {
      std::lock_guard lock(planner_mutex());
      fftw_plan p = fftw_plan_dft_1d(static_cast<int>(m), row.data, spectrum.data, FFTW_FORWARD,
                                     FFTW_ESTIMATE);
      fftw_execute(p);
      fftw_destroy_plan(p);
    }
    double negative = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double lambda = spectrum.data[k][0];
      total += std::abs(lambda);
      if (lambda < 0.0) negative -= lambda;
    }
    const double relative = total > 0.0 ? negative / total : 0.0;
    if (relative <= options.psd_tolerance) {
      impl_->m = m;
      impl_->clamped = relative;
      impl_->amplitude.resize(m);
      for (std::size_t k = 0; k < m; ++k)
        impl_->amplitude[k] =
            std::sqrt(std::max(0.0, spectrum.data[k][0]) / static_cast<double>(m));
      break;
    }
    if (m * 2 > m_max)
      throw Error(ErrorCode::EmbeddingNotPSD,
                  "circulant embedding not PSD: relative negative mass " +
                      format_double(relative) + " at ring size " + std::to_string(m));
  }

  FftwBuffer in(impl_->m);
  FftwBuffer out(impl_->m);
  std::lock_guard lock(planner_mutex());
  impl_->plan = fftw_plan_dft_1d(static_cast<int>(impl_->m), in.data, out.data, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
}

CirculantSampler::~CirculantSampler() = default;
CirculantSampler::CirculantSampler(CirculantSampler&&) noexcept = default;
CirculantSampler& CirculantSampler::operator=(CirculantSampler&&) noexcept = default;

const Grid& CirculantSampler::grid() const noexcept { return impl_->grid; }
std::size_t CirculantSampler::ring_size() const noexcept { return impl_->m; }
double CirculantSampler::clamped_mass() const noexcept { return impl_->clamped; }

FieldSample CirculantSampler::sample(std::uint64_t seed) const {
  const Impl& s = *impl_;
  FieldSample out;
  out.grid = s.grid;
  out.seed = seed;
  if (s.zero_field) {
    out.g_values.assign(s.grid.n, 0.0);
    out.a_values.assign(s.grid.n, 1.0);
    return out;
  }
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FftwBuffer in(s.m);
  FftwBuffer spectral(s.m);
  for (std::size_t k = 0; k < s.m; ++k) {
    const double re = normal(engine);
    const double im = normal(engine);
    in.data[k][0] = s.amplitude[k] * re;
    in.data[k][1] = s.amplitude[k] * im;
  }
  fftw_execute_dft(s.plan, in.data, spectral.data);
  out.g_values.resize(s.grid.n);
  out.a_values.resize(s.grid.n);
  for (std::size_t i = 0; i < s.grid.n; ++i) {
    out.g_values[i] = spectral.data[i][0];
    out.a_values[i] = std::exp(out.g_values[i]);
  }
  return out;
}

FieldSample sample_field(const CovarianceModel& model, const Grid& grid, std::uint64_t seed,
                         SamplerOptions options) {
  return CirculantSampler(model, grid, options).sample(seed);
}

MomentEstimate coefficient_moments(std::span<const FieldSample> ensemble, int p,
                                   const CovarianceModel& model) {
  if (p == 0 || std::abs(p) > 4)
    throw Error(ErrorCode::InvalidArgument, "coefficient_moments: need 0 < |p| <= 4");
  if (ensemble.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "coefficient_moments: need >= 2 replicates");
  // Nodes within one realization are correlated; replicate means are i.i.d.
  std::vector<double> replicate_means;
  replicate_means.reserve(ensemble.size());
  for (const auto& sample : ensemble) {
    double acc = 0.0;
    for (double g : sample.g_values) acc += std::exp(p * g);
    replicate_means.push_back(acc / static_cast<double>(sample.g_values.size()));
  }
  return {estimate_mean(replicate_means), std::exp(0.5 * model.sigma0 * p * p)};
}

void write_field_csv(std::ostream& out, const FieldSample& sample) {
  out << "x,g,a\n";
  for (std::size_t i = 0; i < sample.grid.n; ++i) {
    out << format_double(static_cast<double>(i) * sample.grid.h) << ','
        << format_double(sample.g_values[i]) << ',' << format_double(sample.a_values[i]) << '\n';
  }
}

}  // namespace lnhom
