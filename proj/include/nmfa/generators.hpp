#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmfa/error.hpp"
#include "nmfa/ising.hpp"
#include "nmfa/random.hpp"

namespace nmfa {

enum class InstanceClass { SK, DenseMaxCut, CubicMaxCut, Moebius };

inline const char* to_string(InstanceClass c) {
  switch (c) {
    case InstanceClass::SK: return "sk";
    case InstanceClass::DenseMaxCut: return "dense";
    case InstanceClass::CubicMaxCut: return "cubic";
    case InstanceClass::Moebius: return "moebius";
  }
  return "?";
}

inline std::optional<InstanceClass> parse_instance_class(std::string_view name) {
  if (name == "sk") return InstanceClass::SK;
  if (name == "dense") return InstanceClass::DenseMaxCut;
  if (name == "cubic") return InstanceClass::CubicMaxCut;
  if (name == "moebius") return InstanceClass::Moebius;
  return std::nullopt;
}

struct GenSpec {
  InstanceClass instance_class = InstanceClass::SK;
  std::size_t n = 0;
  double p = 0.5;  // dense class only
  std::uint64_t seed = 0;
};

// Complete graph with J_ij = +1 or -1, each with probability 1/2.
inline IsingProblem gen_sk(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("SK instance needs n >= 2");
  Rng rng(seed);
  std::vector<Coupler> couplers;
  couplers.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      couplers.push_back({i, j, (rng() >> 63) ? 1.0 : -1.0});
    }
  }
  return IsingProblem(n, {}, std::move(couplers));
}

// Erdos-Renyi G(n, p) with unit antiferromagnetic weights.
inline IsingProblem gen_dense_maxcut(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("dense MAX-CUT instance needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in (0, 1]");
  Rng rng(seed);
  std::vector<Coupler> couplers;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) couplers.push_back({i, j, 1.0});
    }
  }
  return IsingProblem(n, {}, std::move(couplers));
}

// Random simple 3-regular graph by configuration-model pairing, restarting
// from scratch whenever a self-loop or repeated edge appears.
inline IsingProblem gen_cubic_maxcut(std::size_t n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("cubic instance needs even n >= 4");
  Rng rng(seed);
  std::vector<std::size_t> stubs(3 * n);
  std::vector<Coupler> couplers;
  std::vector<std::vector<std::size_t>> adjacent(n);
  for (;;) {
    for (std::size_t k = 0; k < stubs.size(); ++k) stubs[k] = k / 3;
    shuffle(stubs.begin(), stubs.end(), rng);
    couplers.clear();
    for (auto& a : adjacent) a.clear();
    bool simple = true;
    for (std::size_t k = 0; k < stubs.size(); k += 2) {
      const auto u = stubs[k];
      const auto v = stubs[k + 1];
      if (u == v || std::find(adjacent[u].begin(), adjacent[u].end(), v) != adjacent[u].end()) {
        simple = false;
        break;
      }
      adjacent[u].push_back(v);
      adjacent[v].push_back(u);
      couplers.push_back({std::min(u, v), std::max(u, v), 1.0});
    }
    if (simple) return IsingProblem(n, {}, std::move(couplers));
  }
}

// Even cycle plus antipodal chords, unit weights.
inline IsingProblem moebius_ladder(std::size_t n) {
  if (n < 6 || n % 2 != 0) throw InvalidArgument("Moebius ladder needs even n >= 6");
  std::vector<Coupler> couplers;
  couplers.reserve(n + n / 2);
  for (std::size_t i = 0; i < n; ++i) couplers.push_back({i, (i + 1) % n, 1.0});
  for (std::size_t i = 0; i < n / 2; ++i) couplers.push_back({i, i + n / 2, 1.0});
  return IsingProblem(n, {}, std::move(couplers));
}

inline IsingProblem generate(const GenSpec& spec) {
  switch (spec.instance_class) {
    case InstanceClass::SK: return gen_sk(spec.n, spec.seed);
    case InstanceClass::DenseMaxCut: return gen_dense_maxcut(spec.n, spec.p, spec.seed);
    case InstanceClass::CubicMaxCut: return gen_cubic_maxcut(spec.n, spec.seed);
    case InstanceClass::Moebius: return moebius_ladder(spec.n);
  }
  throw InvalidArgument("unknown instance class");
}

// Number of connected components; used to report (not enforce) connectivity.
inline std::size_t component_count(const IsingProblem& problem) {
  const std::size_t n = problem.size();
  std::vector<std::size_t> stack;
  std::vector<bool> seen(n, false);
  std::size_t components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    ++components;
    seen[root] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto& nb : problem.row(v)) {
        if (!seen[nb.index]) {
          seen[nb.index] = true;
          stack.push_back(nb.index);
        }
      }
    }
  }
  return components;
}

}  // namespace nmfa
