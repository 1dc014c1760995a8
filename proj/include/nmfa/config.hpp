#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "nmfa/error.hpp"
#include "nmfa/schedule.hpp"
#include "nmfa/solver.hpp"

namespace nmfa {

// Run configuration file. One "key = value" per line; '#' starts a comment;
// blank lines are ignored. Keys:
//
//   alpha      = <real in (0, 1]>
//   sigma      = <real >= 0>
//   t_f        = <integer >= 1>
//   seed       = <unsigned 64-bit integer>
//   schedule   = <f:T>, <f:T>, ...        (first f = 0, last f = 1)
//   n_runs     = <integer >= 1>
//   trajectory = on | off | true | false | 1 | 0
//
// Every key is optional. Later lines override earlier ones.
struct RunConfig {
  std::optional<double> alpha;
  std::optional<double> sigma;
  std::optional<std::size_t> t_f;
  std::optional<std::uint64_t> seed;
  std::optional<Schedule> schedule;
  std::optional<std::size_t> n_runs;
  std::optional<bool> trajectory;

  // Copies every set field onto params.
  void apply(NmfaParams& params) const {
    if (alpha) params.alpha = *alpha;
    if (sigma) params.sigma = *sigma;
    if (t_f) params.t_f = *t_f;
    if (seed) params.seed = *seed;
    if (schedule) params.schedule = *schedule;
  }
};

namespace detail {

inline bool parse_unsigned(std::string_view s, std::uint64_t& out) {
  s = trim(s);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return !s.empty() && ec == std::errc{} && ptr == end;
}

}  // namespace detail

inline RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(ParseErrorKind::BadToken, line_no, "expected 'key = value'");
    }
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    auto bad = [&](const char* what) {
      return ParseError(ParseErrorKind::BadToken, line_no,
                        std::string(key) + ": " + what + ", got '" + std::string(value) + "'");
    };

    double real = 0.0;
    std::uint64_t integer = 0;
    if (key == "alpha") {
      if (!detail::parse_double(value, real) || !(real > 0.0 && real <= 1.0)) {
        throw bad("expected a real in (0, 1]");
      }
      cfg.alpha = real;
    } else if (key == "sigma") {
      if (!detail::parse_double(value, real) || real < 0.0) throw bad("expected a real >= 0");
      cfg.sigma = real;
    } else if (key == "t_f") {
      if (!detail::parse_unsigned(value, integer) || integer < 1) throw bad("expected an integer >= 1");
      cfg.t_f = integer;
    } else if (key == "seed") {
      if (!detail::parse_unsigned(value, integer)) throw bad("expected an unsigned integer");
      cfg.seed = integer;
    } else if (key == "n_runs") {
      if (!detail::parse_unsigned(value, integer) || integer < 1) throw bad("expected an integer >= 1");
      cfg.n_runs = integer;
    } else if (key == "schedule") {
      try {
        cfg.schedule = parse_schedule(value);
      } catch (const InvalidArgument& e) {
        throw ParseError(ParseErrorKind::BadToken, line_no, e.what());
      }
    } else if (key == "trajectory") {
      if (value == "on" || value == "true" || value == "1") {
        cfg.trajectory = true;
      } else if (value == "off" || value == "false" || value == "0") {
        cfg.trajectory = false;
      } else {
        throw bad("expected on/off");
      }
    } else {
      throw ParseError(ParseErrorKind::UnknownKey, line_no, std::string(key));
    }
  }
  return cfg;
}

inline RunConfig read_run_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace nmfa
