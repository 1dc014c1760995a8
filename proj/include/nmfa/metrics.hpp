#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "nmfa/error.hpp"
#include "nmfa/ising.hpp"
#include "nmfa/solver.hpp"

namespace nmfa {

inline constexpr std::size_t kMaxExactSpins = 26;

// Absolute tolerance when comparing energies to a reference.
inline constexpr double kEnergyTolerance = 1e-9;

struct GroundTruth {
  enum class Source { Exact, BestKnown };

  Energy energy;
  std::uint64_t degeneracy = 0;  // 0 when unknown
  Source source = Source::Exact;
};

namespace detail {

struct EnumShard {
  double min = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;

  void offer(double e, std::uint64_t multiplicity = 1) {
    if (e < min - kEnergyTolerance) {
      min = e;
      count = multiplicity;
    } else if (e <= min + kEnergyTolerance) {
      count += multiplicity;
    }
  }
};

// Enumerates the low `free_bits` spins by reflected Gray code with the
// remaining spins fixed from `prefix`. Local fields are kept up to date so
// each flip costs O(n).
inline EnumShard enumerate_shard(std::span<const double> dense, std::span<const double> h,
                                 std::size_t n, std::size_t free_bits, std::uint64_t prefix) {
  std::vector<double> s(n, 1.0);
  for (std::size_t i = free_bits; i < n; ++i) {
    if ((prefix >> (i - free_bits)) & 1U) s[i] = -1.0;
  }
  std::vector<double> field(n);
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = h[i];
    for (std::size_t j = 0; j < n; ++j) acc += dense[i * n + j] * s[j];
    field[i] = acc;
    e += h[i] * s[i];
    for (std::size_t j = i + 1; j < n; ++j) e += dense[i * n + j] * s[i] * s[j];
  }

  EnumShard shard;
  shard.offer(e);
  const std::uint64_t steps = std::uint64_t{1} << free_bits;
  for (std::uint64_t k = 1; k < steps; ++k) {
    const auto b = static_cast<std::size_t>(std::countr_zero(k));
    e -= 2.0 * s[b] * field[b];
    s[b] = -s[b];
    const double delta = 2.0 * s[b];
    const double* col = dense.data() + b * n;
    for (std::size_t j = 0; j < n; ++j) field[j] += delta * col[j];
    shard.offer(e);
  }
  return shard;
}

}  // namespace detail

// Exact ground energy and degeneracy by exhaustive Gray-code enumeration.
// With h = 0 the last spin is pinned to +1 and counts are doubled.
inline GroundTruth brute_force_ground(const IsingProblem& problem, std::size_t threads = 1) {
  const std::size_t n = problem.size();
  if (n > kMaxExactSpins) throw SizeLimitError(n, kMaxExactSpins);

  std::vector<double> dense(n * n, 0.0);
  for (const auto& c : problem.couplers()) {
    dense[c.i * n + c.j] = c.w;
    dense[c.j * n + c.i] = c.w;
  }
  const auto h = problem.fields();
  const bool symmetric = !problem.has_fields();
  const std::size_t enumerated = symmetric ? n - 1 : n;

  // Fixed shard layout so the merge order never depends on the thread count.
  const std::size_t prefix_bits = enumerated >= 12 ? 4 : 0;
  const std::size_t free_bits = enumerated - prefix_bits;
  const std::size_t shard_count = std::size_t{1} << prefix_bits;
  std::vector<detail::EnumShard> shards(shard_count);

  auto work = [&](std::size_t k) {
    shards[k] = detail::enumerate_shard(dense, h, n, free_bits, k);
  };
  threads = std::clamp<std::size_t>(threads, 1, shard_count);
  if (threads == 1) {
    for (std::size_t k = 0; k < shard_count; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < shard_count; k = next++) work(k);
      });
    }
  }

  detail::EnumShard total;
  for (const auto& shard : shards) total.offer(shard.min, shard.count);
  return {{total.min}, symmetric ? 2 * total.count : total.count, GroundTruth::Source::Exact};
}

// Fraction of runs whose final energy reaches the reference within tolerance.
inline double success_probability(std::span<const RunResult> results, const GroundTruth& ground) {
  if (results.empty()) throw InvalidArgument("success probability of an empty result set");
  std::size_t hits = 0;
  for (const auto& r : results) {
    if (r.final_energy.value <= ground.energy.value + kEnergyTolerance) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

// Expected time to see the ground state at least once with the given
// confidence: tau * ln(1 - confidence) / ln(1 - p).
inline double time_to_solution(double p, double tau_seconds, double confidence = 0.99) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("success probability must lie in [0, 1]");
  if (!(tau_seconds > 0.0) || !std::isfinite(tau_seconds)) {
    throw InvalidArgument("time per run must be positive");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidArgument("confidence must lie in (0, 1)");
  }
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  if (p >= confidence) return tau_seconds;
  return tau_seconds * std::log1p(-confidence) / std::log1p(-p);
}

// Percentile with linear interpolation between order statistics, q in [0, 1].
// Accepts +infinity entries.
inline double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw InvalidArgument("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  const double a = sorted[lo];
  const double b = sorted[hi];
  if (frac == 0.0 || a == b) return a;
  return a + (b - a) * frac;
}

struct Quartiles {
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

inline Quartiles quartiles(std::span<const double> values) {
  return {percentile(values, 0.5), percentile(values, 0.25), percentile(values, 0.75)};
}

// Per-instance benchmark outcome.
struct InstanceStats {
  double p_success = 0.0;
  double tts_runs = 0.0;     // TTS with tau = 1 run
  double tts_seconds = 0.0;  // TTS with tau = mean wall clock per run
  double mean_energy = 0.0;
  double best_energy = 0.0;
  double mean_wall_clock_us = 0.0;
};

inline InstanceStats instance_stats(std::span<const RunResult> results, const GroundTruth& ground,
                                    double confidence = 0.99) {
  InstanceStats st;
  st.p_success = success_probability(results, ground);
  double sum_e = 0.0;
  double sum_t = 0.0;
  st.best_energy = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    sum_e += r.final_energy.value;
    sum_t += r.wall_clock_us;
    st.best_energy = std::min(st.best_energy, r.final_energy.value);
  }
  const auto count = static_cast<double>(results.size());
  st.mean_energy = sum_e / count;
  st.mean_wall_clock_us = sum_t / count;
  st.tts_runs = time_to_solution(st.p_success, 1.0, confidence);
  const double tau = st.mean_wall_clock_us * 1e-6;
  st.tts_seconds = tau > 0.0 ? time_to_solution(st.p_success, tau, confidence)
                             : std::numeric_limits<double>::quiet_NaN();
  return st;
}

// Distribution of per-instance statistics for one problem size.
struct RunStats {
  std::size_t instances = 0;
  Quartiles p_success;
  Quartiles tts_runs;
  Quartiles tts_seconds;
  double mean_energy = 0.0;  // mean over instances of per-instance means
  double best_energy = 0.0;  // best over instances
};

inline RunStats aggregate(std::span<const InstanceStats> per_instance) {
  if (per_instance.empty()) throw InvalidArgument("aggregate of zero instances");
  std::vector<double> p;
  std::vector<double> tr;
  std::vector<double> ts;
  RunStats out;
  out.instances = per_instance.size();
  out.best_energy = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& st : per_instance) {
    p.push_back(st.p_success);
    tr.push_back(st.tts_runs);
    ts.push_back(st.tts_seconds);
    sum += st.mean_energy;
    out.best_energy = std::min(out.best_energy, st.best_energy);
  }
  out.p_success = quartiles(p);
  out.tts_runs = quartiles(tr);
  out.tts_seconds = quartiles(ts);
  out.mean_energy = sum / static_cast<double>(per_instance.size());
  return out;
}

}  // namespace nmfa
