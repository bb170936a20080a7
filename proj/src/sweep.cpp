#include "lnhom/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "lnhom/error.hpp"
#include "lnhom/homogenization.hpp"
#include "lnhom/seeds.hpp"
#include "lnhom/solver.hpp"

namespace lnhom {

void validate(const SweepConfig& config) {
  try {
    validate(config.model);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  const auto& js = config.eps_exponents;
  if (js.size() < 3) throw Error(ErrorCode::Config, "eps_exponents needs at least 3 entries");
  for (std::size_t i = 0; i < js.size(); ++i) {
    if (js[i] < 0 || js[i] > 30) throw Error(ErrorCode::Config, "eps exponent outside [0, 30]");
    if (i > 0 && js[i] <= js[i - 1])
      throw Error(ErrorCode::Config, "eps_exponents must be strictly increasing");
  }
  if (config.replicates == 0) throw Error(ErrorCode::Config, "replicates must be >= 1");
  if (!(config.probe > 0.0 && config.probe < 1.0))
    throw Error(ErrorCode::Config, "probe must lie in (0, 1)");
  if (config.points_per_corrlen < config.sampler.min_points_per_corrlen)
    throw Error(ErrorCode::Config, "points_per_corrlen below the sampler minimum");
}

ObservableRecord run_task(const SweepConfig& config, const CirculantSampler& sampler, int j,
                          std::size_t replicate) {
  ObservableRecord rec;
  rec.j = j;
  rec.eps = std::ldexp(1.0, -j);
  rec.replicate = replicate;
  rec.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(j), replicate);

  const FieldSample sample = sampler.sample(rec.seed);
  const double abar = homogenized_coefficient(config.model);
  const HomogenizedProblem problem(abar, config.f);
  const BVPSolution sol = solve(sample, config.f, rec.eps);

  const auto probe = static_cast<std::size_t>(std::lround(config.probe / sol.dx));
  const double x0 = static_cast<double>(probe) * sol.dx;
  rec.err_u_probe = std::abs(sol.u[probe] - problem.ubar(x0));
  rec.err_du_probe = std::abs(sol.du[probe] - problem.dubar(x0) * abar / sample.a_values[probe]);

  rec.err_twoscale_h1 = two_scale_h1_error(sol, problem, corrector(sample, abar));
  rec.I = observable_I(sample, config.f, config.g, rec.eps);
  rec.J_uv = commutator_observable_J(sample, homogenized_flux_product(config.f, config.g, abar),
                                     abar, rec.eps);
  rec.J_psi = commutator_observable_J(sample, config.psi, abar, rec.eps);
  rec.K = commutator_observable_K(sample, config.f, config.g, abar, rec.eps);
  return rec;
}

std::vector<ObservableRecord> run_sweep(const SweepConfig& config, SweepOptions options) {
  validate(config);
  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const std::size_t per_j = config.replicates;
  std::vector<ObservableRecord> slots(config.eps_exponents.size() * per_j);

  std::vector<CirculantSampler> samplers;
  samplers.reserve(config.eps_exponents.size());
  for (int j : config.eps_exponents) {
    const Grid grid = make_grid(std::ldexp(1.0, j), config.model, config.points_per_corrlen);
    samplers.emplace_back(config.model, grid, config.sampler);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex failure_mutex;
  std::size_t failed_index = slots.size();
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t k = next.fetch_add(1);
      if (k >= slots.size()) return;
      const std::size_t jj = k / per_j;
      const std::size_t r = k % per_j;
      try {
        const auto start = std::chrono::steady_clock::now();
        slots[k] = run_task(config, samplers[jj], config.eps_exponents[jj], r);
        if (options.record_runtime) {
          const std::chrono::duration<double, std::milli> spent =
              std::chrono::steady_clock::now() - start;
          slots[k].runtime_ms = spent.count();
        }
      } catch (...) {
        // Tasks are claimed in index order, so every smaller index still
        // completes; keeping the smallest failing index is schedule-independent.
        stop.store(true);
        std::lock_guard lock(failure_mutex);
        if (k < failed_index) {
          failed_index = k;
          failure = std::current_exception();
        }
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  if (failure) {
    const int j = config.eps_exponents[failed_index / per_j];
    const std::size_t r = failed_index % per_j;
    const std::string tag = " [j=" + std::to_string(j) + ", r=" + std::to_string(r) + "]";
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      throw Error(e.code(), e.what() + tag);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::InvalidArgument, e.what() + tag);
    }
  }
  return slots;
}

std::vector<ObservableRecord> select_j(const std::vector<ObservableRecord>& records, int j) {
  std::vector<ObservableRecord> out;
  for (const auto& rec : records)
    if (rec.j == j) out.push_back(rec);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.replicate < b.replicate; });
  return out;
}

std::vector<int> exponents_in(const std::vector<ObservableRecord>& records) {
  std::set<int> js;
  for (const auto& rec : records) js.insert(rec.j);
  return {js.begin(), js.end()};
}

}  // namespace lnhom
