#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nmfa/error.hpp"

namespace nmfa {

struct Breakpoint {
  double fraction;     // position in the anneal, [0, 1]
  double temperature;  // > 0

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Piecewise exponential temperature curve over the anneal fraction
// f = (t - 1) / (t_f - 1). Between breakpoints, log T is linear in f.
class Schedule {
public:
  explicit Schedule(std::vector<Breakpoint> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw InvalidArgument("schedule needs at least two breakpoints");
    if (points_.front().fraction != 0.0 || points_.back().fraction != 1.0) {
      throw InvalidArgument("schedule must start at f=0 and end at f=1");
    }
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const auto& p = points_[k];
      if (!(p.temperature > 0.0) || !std::isfinite(p.temperature)) {
        throw InvalidArgument("schedule temperatures must be positive and finite");
      }
      if (k > 0 && !(p.fraction > points_[k - 1].fraction)) {
        throw InvalidArgument("schedule fractions must be strictly increasing");
      }
    }
  }

  // Three segments: noise-dominated start, mean-field-dominated finish.
  static Schedule default_schedule() {
    return Schedule({{0.0, 2.0}, {0.25, 0.8}, {0.75, 0.2}, {1.0, 0.02}});
  }

  const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }

  // Temperature at anneal fraction f in [0, 1].
  double at_fraction(double f) const {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("anneal fraction outside [0, 1]");
    if (f == 1.0) return points_.back().temperature;
    std::size_t k = 0;
    while (k + 2 < points_.size() && points_[k + 1].fraction <= f) ++k;
    const auto& a = points_[k];
    const auto& b = points_[k + 1];
    const double x = (f - a.fraction) / (b.fraction - a.fraction);
    if (x == 0.0) return a.temperature;
    return a.temperature * std::pow(b.temperature / a.temperature, x);
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;

private:
  std::vector<Breakpoint> points_;
};

// Temperature at iteration t of t_f (1-based).
inline double schedule_eval(const Schedule& schedule, std::size_t t, std::size_t t_f) {
  if (t_f == 0 || t < 1 || t > t_f) {
    throw InvalidArgument("iteration " + std::to_string(t) + " outside [1, " +
                          std::to_string(t_f) + "]");
  }
  if (t_f == 1) return schedule.at_fraction(0.0);
  const double f = static_cast<double>(t - 1) / static_cast<double>(t_f - 1);
  return schedule.at_fraction(f);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace detail

// Parses "f:T,f:T,..." (whitespace tolerated around tokens).
inline Schedule parse_schedule(std::string_view text) {
  std::vector<Breakpoint> points;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = detail::trim(text.substr(pos, comma - pos));
    const auto colon = item.find(':');
    Breakpoint bp{};
    if (colon == std::string_view::npos ||
        !detail::parse_double(item.substr(0, colon), bp.fraction) ||
        !detail::parse_double(item.substr(colon + 1), bp.temperature)) {
      throw InvalidArgument("bad schedule entry '" + std::string(item) +
                            "', expected f:T");
    }
    points.push_back(bp);
    pos = comma + 1;
  }
  return Schedule(std::move(points));
}

inline std::string format_schedule(const Schedule& schedule) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& bp : schedule.breakpoints()) {
    if (!first) os << ',';
    os << bp.fraction << ':' << bp.temperature;
    first = false;
  }
  return os.str();
}

}  // namespace nmfa
