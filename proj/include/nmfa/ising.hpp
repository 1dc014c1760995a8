#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nmfa/error.hpp"

namespace nmfa {

// Continuous analog spins, each in [-1, 1].
using SpinVector = std::vector<double>;

// Per-spin mean field h_i + sum_j J_ij s_j.
using FieldVector = std::vector<double>;

struct Energy {
  double value = 0.0;

  friend auto operator<=>(const Energy&, const Energy&) = default;
};

struct Coupler {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 0.0;

  friend bool operator==(const Coupler&, const Coupler&) = default;
};

struct Neighbor {
  std::uint32_t index;
  double w;
};

// Discrete configuration over {-1, +1}.
class SpinConfig {
public:
  SpinConfig() = default;

  explicit SpinConfig(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
    for (auto v : spins_) {
      if (v != 1 && v != -1) {
        throw InvalidArgument("spin value must be -1 or +1, got " + std::to_string(v));
      }
    }
  }

  SpinConfig(std::initializer_list<int> spins) {
    spins_.reserve(spins.size());
    for (int v : spins) {
      if (v != 1 && v != -1) {
        throw InvalidArgument("spin value must be -1 or +1, got " + std::to_string(v));
      }
      spins_.push_back(static_cast<std::int8_t>(v));
    }
  }

  static SpinConfig all_up(std::size_t n) {
    return SpinConfig(std::vector<std::int8_t>(n, 1));
  }

  std::size_t size() const noexcept { return spins_.size(); }
  int operator[](std::size_t i) const noexcept { return spins_[i]; }
  void flip(std::size_t i) noexcept { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }

  SpinConfig negated() const {
    SpinConfig out = *this;
    for (auto& v : out.spins_) v = static_cast<std::int8_t>(-v);
    return out;
  }

  std::span<const std::int8_t> values() const noexcept { return spins_; }
  auto begin() const noexcept { return spins_.begin(); }
  auto end() const noexcept { return spins_.end(); }

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

private:
  std::vector<std::int8_t> spins_;
};

// Ising problem H = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i.
//
// Couplers are stored once per unordered pair (i < j), sorted by (i, j).
// Row access is symmetric. A dense row-major copy of J is kept when the
// coupler density reaches kDenseThreshold.
class IsingProblem {
public:
  static constexpr double kDenseThreshold = 0.5;

  IsingProblem() = default;

  IsingProblem(std::size_t n, std::vector<double> h, std::vector<Coupler> couplers)
      : n_(n), h_(std::move(h)), couplers_(std::move(couplers)) {
    if (n_ == 0) throw InvalidArgument("problem must have at least one spin");
    if (n_ > UINT32_MAX) throw InvalidArgument("problem too large");
    if (h_.empty()) h_.assign(n_, 0.0);
    if (h_.size() != n_) throw DimensionError(n_, h_.size());
    for (double v : h_) {
      if (!std::isfinite(v)) throw InvalidArgument("local field must be finite");
    }
    for (auto& c : couplers_) {
      if (c.i >= n_ || c.j >= n_) {
        throw InvalidArgument("coupler index out of range: (" + std::to_string(c.i) +
                              ", " + std::to_string(c.j) + ")");
      }
      if (c.i == c.j) throw InvalidArgument("self-coupling on spin " + std::to_string(c.i));
      if (c.w == 0.0 || !std::isfinite(c.w)) {
        throw InvalidArgument("coupler weight must be finite and nonzero");
      }
      if (c.i > c.j) std::swap(c.i, c.j);
    }
    std::sort(couplers_.begin(), couplers_.end(), [](const Coupler& a, const Coupler& b) {
      return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t k = 1; k < couplers_.size(); ++k) {
      if (couplers_[k].i == couplers_[k - 1].i && couplers_[k].j == couplers_[k - 1].j) {
        throw InvalidArgument("duplicate coupler (" + std::to_string(couplers_[k].i) + ", " +
                              std::to_string(couplers_[k].j) + ")");
      }
    }
    build_rows();
  }

  std::size_t size() const noexcept { return n_; }
  std::span<const double> fields() const noexcept { return h_; }
  std::span<const Coupler> couplers() const noexcept { return couplers_; }
  std::size_t edge_count() const noexcept { return couplers_.size(); }

  std::span<const Neighbor> row(std::size_t i) const noexcept {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  bool is_dense() const noexcept { return !dense_.empty(); }

  // Row i of the dense coupling matrix; only valid when is_dense().
  std::span<const double> dense_row(std::size_t i) const noexcept {
    return {dense_.data() + i * n_, n_};
  }

  bool has_fields() const noexcept {
    return std::any_of(h_.begin(), h_.end(), [](double v) { return v != 0.0; });
  }

  // sqrt(h_i^2 + sum_j J_ij^2) per spin.
  std::span<const double> normalizers() const noexcept { return norms_; }

  double total_weight() const noexcept {
    double sum = 0.0;
    for (const auto& c : couplers_) sum += c.w;
    return sum;
  }

  double density() const noexcept {
    if (n_ < 2) return 0.0;
    return static_cast<double>(couplers_.size()) /
           (0.5 * static_cast<double>(n_) * static_cast<double>(n_ - 1));
  }

  friend bool operator==(const IsingProblem& a, const IsingProblem& b) {
    return a.n_ == b.n_ && a.h_ == b.h_ && a.couplers_ == b.couplers_;
  }

private:
  void build_rows() {
    std::vector<std::size_t> degree(n_, 0);
    for (const auto& c : couplers_) {
      ++degree[c.i];
      ++degree[c.j];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
    neighbors_.resize(offsets_[n_]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& c : couplers_) {
      neighbors_[cursor[c.i]++] = {static_cast<std::uint32_t>(c.j), c.w};
      neighbors_[cursor[c.j]++] = {static_cast<std::uint32_t>(c.i), c.w};
    }
    for (std::size_t i = 0; i < n_; ++i) {
      std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
                [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
    }

    norms_.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double sq = h_[i] * h_[i];
      for (const auto& nb : row(i)) sq += nb.w * nb.w;
      norms_[i] = std::sqrt(sq);
    }

    if (density() >= kDenseThreshold) {
      dense_.assign(n_ * n_, 0.0);
      for (const auto& c : couplers_) {
        dense_[c.i * n_ + c.j] = c.w;
        dense_[c.j * n_ + c.i] = c.w;
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<double> h_;
  std::vector<Coupler> couplers_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  std::vector<double> norms_;
  std::vector<double> dense_;
};

inline Energy energy(const IsingProblem& problem, const SpinConfig& config) {
  if (config.size() != problem.size()) throw DimensionError(problem.size(), config.size());
  double sum = 0.0;
  for (const auto& c : problem.couplers()) sum += c.w * config[c.i] * config[c.j];
  const auto h = problem.fields();
  for (std::size_t i = 0; i < h.size(); ++i) sum += h[i] * config[i];
  return {sum};
}

// Weight of edges crossing the partition. Only defined when h = 0.
inline double cut_value(const IsingProblem& problem, const SpinConfig& config) {
  if (problem.has_fields()) {
    throw UnsupportedConversion("cut value is undefined for problems with local fields");
  }
  if (config.size() != problem.size()) throw DimensionError(problem.size(), config.size());
  double cut = 0.0;
  for (const auto& c : problem.couplers()) {
    if (config[c.i] != config[c.j]) cut += c.w;
  }
  return cut;
}

// Writes h_i + sum_j J_ij s_j into out. No size checks.
inline void mean_field_into(const IsingProblem& problem, std::span<const double> s,
                            std::span<double> out) noexcept {
  const std::size_t n = problem.size();
  const auto h = problem.fields();
  if (problem.is_dense()) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto jrow = problem.dense_row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += jrow[j] * s[j];
      out[i] = h[i] + acc;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& nb : problem.row(i)) acc += nb.w * s[nb.index];
      out[i] = h[i] + acc;
    }
  }
}

inline FieldVector mean_field(const IsingProblem& problem, std::span<const double> s) {
  if (s.size() != problem.size()) throw DimensionError(problem.size(), s.size());
  FieldVector phi(problem.size());
  mean_field_into(problem, s, phi);
  return phi;
}

inline std::vector<double> normalizers(const IsingProblem& problem) {
  const auto norms = problem.normalizers();
  return {norms.begin(), norms.end()};
}

// Sign of each spin; exact zero rounds to +1.
inline SpinConfig sign_round(std::span<const double> s) {
  std::vector<std::int8_t> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] < 0.0 ? -1 : 1;
  return SpinConfig(std::move(out));
}

inline bool in_unit_box(std::span<const double> s) noexcept {
  return std::all_of(s.begin(), s.end(), [](double v) { return v >= -1.0 && v <= 1.0; });
}

}  // namespace nmfa
