#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "nmfa/error.hpp"
#include "nmfa/ising.hpp"
#include "nmfa/random.hpp"
#include "nmfa/schedule.hpp"

namespace nmfa {

struct NmfaParams {
  double alpha = 0.15;  // feedback constant
  double sigma = 0.15;  // noise standard deviation on the normalized field
  std::size_t t_f = 1000;
  Schedule schedule = Schedule::default_schedule();
  std::uint64_t seed = 0;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be >= 0");
    if (t_f < 1) throw InvalidArgument("t_f must be at least 1");
  }
};

struct Snapshot {
  SpinVector spins;
  Energy energy;  // energy of sign_round(spins)
  double temperature = std::numeric_limits<double>::quiet_NaN();  // NaN before the first step
};

struct RunResult {
  SpinConfig final_config;
  Energy final_energy;
  std::uint64_t seed = 0;
  std::vector<Snapshot> trajectory;  // t_f + 1 entries when recorded, index 0 is s = 0
  double wall_clock_us = 0.0;
};

// Anything that can fill a buffer with standard normal draws.
template <typename N>
concept NoiseSource = requires(N& noise, std::span<double> out) {
  { noise.fill(out) };
};

namespace detail {

// Normalizers with zero entries replaced by 1.
inline std::vector<double> effective_normalizers(const IsingProblem& problem) {
  auto norms = normalizers(problem);
  for (auto& v : norms) {
    if (v == 0.0) v = 1.0;
  }
  return norms;
}

// One synchronous update in place. All phi are computed from the incoming s
// before any spin is mixed.
inline void step_in_place(const IsingProblem& problem, std::span<double> s, double temperature,
                          double alpha, double sigma, std::span<const double> normal_draws,
                          std::span<const double> norms, std::span<double> phi) noexcept {
  const std::size_t n = problem.size();
  mean_field_into(problem, s, phi);
  for (std::size_t i = 0; i < n; ++i) {
    const double field = phi[i] / norms[i] + sigma * normal_draws[i];
    phi[i] = -std::tanh(field / temperature);
  }
  for (std::size_t i = 0; i < n; ++i) s[i] = alpha * phi[i] + (1.0 - alpha) * s[i];
}

}  // namespace detail

// One NMFA iteration with caller-supplied standard normal draws (one per spin,
// assigned by index). The draws are scaled by params.sigma.
inline SpinVector nmfa_step(const IsingProblem& problem, std::span<const double> s,
                            double temperature, const NmfaParams& params,
                            std::span<const double> normal_draws) {
  if (s.size() != problem.size()) throw DimensionError(problem.size(), s.size());
  if (normal_draws.size() != problem.size()) {
    throw DimensionError(problem.size(), normal_draws.size());
  }
  if (!(temperature > 0.0)) throw InvalidArgument("temperature must be positive");
  SpinVector out(s.begin(), s.end());
  FieldVector phi(problem.size());
  const auto norms = detail::effective_normalizers(problem);
  detail::step_in_place(problem, out, temperature, params.alpha, params.sigma, normal_draws,
                        norms, phi);
  return out;
}

template <NoiseSource Noise>
SpinVector nmfa_step(const IsingProblem& problem, std::span<const double> s, double temperature,
                     const NmfaParams& params, Noise& noise) {
  std::vector<double> draws(problem.size());
  noise.fill(draws);
  return nmfa_step(problem, s, temperature, params, draws);
}

// Full anneal from s = 0 using the given noise source.
template <NoiseSource Noise>
RunResult nmfa_run(const IsingProblem& problem, const NmfaParams& params, bool record_trajectory,
                   Noise& noise) {
  params.validate();
  const std::size_t n = problem.size();
  const auto norms = detail::effective_normalizers(problem);
  SpinVector s(n, 0.0);
  FieldVector phi(n);
  std::vector<double> draws(n);

  RunResult result;
  result.seed = params.seed;
  if (record_trajectory) {
    result.trajectory.reserve(params.t_f + 1);
    result.trajectory.push_back({s, energy(problem, sign_round(s))});
  }
  for (std::size_t t = 1; t <= params.t_f; ++t) {
    const double temperature = schedule_eval(params.schedule, t, params.t_f);
    noise.fill(draws);
    detail::step_in_place(problem, s, temperature, params.alpha, params.sigma, draws, norms, phi);
    if (record_trajectory) {
      result.trajectory.push_back({s, energy(problem, sign_round(s)), temperature});
    }
  }
  result.final_config = sign_round(s);
  result.final_energy = energy(problem, result.final_config);
  return result;
}

// Full anneal with Gaussian noise seeded from params.seed.
inline RunResult nmfa_run(const IsingProblem& problem, const NmfaParams& params,
                          bool record_trajectory = false) {
  GaussianStream noise(params.seed);
  return nmfa_run(problem, params, record_trajectory, noise);
}

namespace detail {

inline constexpr std::size_t kLockstepWidth = 8;

// Advances up to kLockstepWidth dense-problem runs together so each row of J
// is loaded once per step for the whole group. Spins are stored interleaved
// (spin-major, run-minor). Per-run arithmetic, including the summation order
// of the mean field, is the same as in nmfa_run, so the results match it
// bit for bit.
inline void run_dense_lockstep(const IsingProblem& problem, const NmfaParams& params,
                               std::uint64_t first_seed, std::span<RunResult> out) {
  constexpr std::size_t W = kLockstepWidth;
  const std::size_t n = problem.size();
  const std::size_t width = out.size();
  const auto norms = effective_normalizers(problem);
  const auto h = problem.fields();

  std::vector<GaussianStream> noise;
  noise.reserve(width);
  for (std::size_t b = 0; b < width; ++b) noise.emplace_back(first_seed + b);

  std::vector<double> s(n * W, 0.0);
  std::vector<double> next(n * W, 0.0);
  std::vector<double> draws(n * W, 0.0);
  std::vector<double> column(n);

  for (std::size_t t = 1; t <= params.t_f; ++t) {
    const double temperature = schedule_eval(params.schedule, t, params.t_f);
    for (std::size_t b = 0; b < width; ++b) {
      noise[b].fill(column);
      for (std::size_t i = 0; i < n; ++i) draws[i * W + b] = column[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto jrow = problem.dense_row(i);
      double acc[W] = {};
      for (std::size_t j = 0; j < n; ++j) {
        const double w = jrow[j];
        const double* sj = s.data() + j * W;
        for (std::size_t b = 0; b < W; ++b) acc[b] += w * sj[b];
      }
      for (std::size_t b = 0; b < W; ++b) {
        const double field = (h[i] + acc[b]) / norms[i] + params.sigma * draws[i * W + b];
        const double target = -std::tanh(field / temperature);
        next[i * W + b] = params.alpha * target + (1.0 - params.alpha) * s[i * W + b];
      }
    }
    s.swap(next);
  }

  for (std::size_t b = 0; b < width; ++b) {
    for (std::size_t i = 0; i < n; ++i) column[i] = s[i * W + b];
    out[b].seed = first_seed + b;
    out[b].final_config = sign_round(column);
    out[b].final_energy = energy(problem, out[b].final_config);
  }
}

}  // namespace detail

// n_runs independent anneals; run k uses seed params.seed + k. Results are in
// run order and do not depend on the thread count.
inline std::vector<RunResult> nmfa_batch(const IsingProblem& problem, const NmfaParams& params,
                                         std::size_t n_runs, std::size_t threads = 1,
                                         bool record_trajectory = false) {
  if (n_runs < 1) throw InvalidArgument("n_runs must be at least 1");
  params.validate();
  std::vector<RunResult> results(n_runs);

  // Work items are single runs, or groups of runs on dense problems.
  const bool lockstep = problem.is_dense() && !record_trajectory;
  const std::size_t group = lockstep ? detail::kLockstepWidth : 1;
  const std::size_t items = (n_runs + group - 1) / group;

  auto run_one = [&](std::size_t item) {
    const std::size_t first = item * group;
    const std::size_t width = std::min(group, n_runs - first);
    const auto start = std::chrono::steady_clock::now();
    if (lockstep) {
      detail::run_dense_lockstep(problem, params, params.seed + first,
                                 std::span<RunResult>(results).subspan(first, width));
    } else {
      NmfaParams local = params;
      local.seed = params.seed + first;
      results[first] = nmfa_run(problem, local, record_trajectory);
    }
    const auto stop = std::chrono::steady_clock::now();
    const double per_run =
        std::chrono::duration<double, std::micro>(stop - start).count() / static_cast<double>(width);
    for (std::size_t k = first; k < first + width; ++k) results[k].wall_clock_us = per_run;
  };

  threads = std::clamp<std::size_t>(threads, 1, items);
  if (threads == 1) {
    for (std::size_t k = 0; k < items; ++k) run_one(k);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < items; k = next++) {
          try {
            run_one(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace nmfa
