#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nmfa/error.hpp"
#include "nmfa/ising.hpp"
#include "nmfa/solver.hpp"

namespace nmfa {

// Largest vertex count accepted from a file header.
inline constexpr std::size_t kMaxGsetVertices = 10'000'000;

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    const auto start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    out.push_back(line.substr(start, pos - start));
  }
  return out;
}

inline bool parse_index(std::string_view s, std::uint64_t& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

inline bool parse_weight(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

inline bool is_comment(std::string_view tok) {
  return !tok.empty() && (tok.front() == '#' || tok.front() == 'c');
}

inline std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

// G-set text: header "n m", then m lines "u v w" with 1-based vertices.
// Blank lines and lines starting with '#' or 'c' are skipped.
inline IsingProblem parse_gset(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::optional<std::uint64_t> n;
  std::uint64_t m = 0;
  std::vector<Coupler> couplers;
  std::unordered_set<std::uint64_t> seen;

  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || detail::is_comment(tokens.front())) continue;

    if (!n) {
      std::uint64_t nv = 0;
      if (tokens.size() != 2 || !detail::parse_index(tokens[0], nv) ||
          !detail::parse_index(tokens[1], m)) {
        throw ParseError(ParseErrorKind::BadHeader, line_no,
                         "expected '<vertices> <edges>'");
      }
      if (nv == 0 || nv > kMaxGsetVertices) {
        throw ParseError(ParseErrorKind::BadHeader, line_no,
                         "vertex count " + std::to_string(nv) + " out of range");
      }
      n = nv;
      continue;
    }

    if (couplers.size() == m) {
      throw ParseError(ParseErrorKind::CountMismatch, line_no,
                       "more edge lines than the declared " + std::to_string(m));
    }
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    double w = 0.0;
    if (tokens.size() != 3) {
      throw ParseError(ParseErrorKind::BadToken, line_no, "expected '<u> <v> <w>'");
    }
    if (!detail::parse_index(tokens[0], u) || !detail::parse_index(tokens[1], v)) {
      throw ParseError(ParseErrorKind::BadToken, line_no, "vertex must be a positive integer");
    }
    if (!detail::parse_weight(tokens[2], w)) {
      throw ParseError(ParseErrorKind::BadToken, line_no, "weight must be a finite number");
    }
    if (u < 1 || v < 1 || u > *n || v > *n) {
      throw ParseError(ParseErrorKind::IndexOutOfRange, line_no,
                       "vertex must lie in [1, " + std::to_string(*n) + "]");
    }
    if (u == v) throw ParseError(ParseErrorKind::SelfLoop, line_no, "vertex " + std::to_string(u));
    if (w == 0.0) throw ParseError(ParseErrorKind::BadToken, line_no, "zero weight");
    const auto a = std::min(u, v) - 1;
    const auto b = std::max(u, v) - 1;
    if (!seen.insert(a * *n + b).second) {
      throw ParseError(ParseErrorKind::DuplicateEdge, line_no,
                       std::to_string(a + 1) + "-" + std::to_string(b + 1));
    }
    couplers.push_back({a, b, w});
  }

  if (!n) throw ParseError(ParseErrorKind::BadHeader, line_no, "missing header");
  if (couplers.size() != m) {
    throw ParseError(ParseErrorKind::CountMismatch, line_no,
                     "header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(couplers.size()));
  }
  return IsingProblem(*n, {}, std::move(couplers));
}

inline IsingProblem read_gset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gset(buf.str());
}

// Canonical G-set text: edges sorted by (u, v), single spaces, trailing newline.
inline std::string write_gset(const IsingProblem& problem) {
  if (problem.has_fields()) {
    throw UnsupportedConversion("G-set format cannot carry local fields");
  }
  std::string out;
  out.reserve(16 * (problem.edge_count() + 1));
  out += std::to_string(problem.size());
  out += ' ';
  out += std::to_string(problem.edge_count());
  out += '\n';
  for (const auto& c : problem.couplers()) {
    if (c.w != std::round(c.w) || std::fabs(c.w) > 9.0e15) {
      throw UnsupportedConversion("G-set format needs integer weights, got " +
                                  detail::format_number(c.w));
    }
    out += std::to_string(c.i + 1);
    out += ' ';
    out += std::to_string(c.j + 1);
    out += ' ';
    out += std::to_string(static_cast<long long>(c.w));
    out += '\n';
  }
  return out;
}

struct ResultsMetadata {
  std::string instance_id;
  std::optional<double> total_weight;  // set when h = 0; enables cut_value
  bool include_timing = false;          // wall_clock_us is empty otherwise
};

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace detail

// One row per run: instance_id,seed,final_energy,cut_value,wall_clock_us.
inline std::string write_results_csv(std::span<const RunResult> results,
                                     const ResultsMetadata& meta) {
  std::string out = "instance_id,seed,final_energy,cut_value,wall_clock_us\n";
  const auto id = detail::csv_field(meta.instance_id);
  for (const auto& r : results) {
    out += id;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += detail::format_number(r.final_energy.value);
    out += ',';
    if (meta.total_weight) out += detail::format_number((*meta.total_weight - r.final_energy.value) / 2.0);
    out += ',';
    if (meta.include_timing) out += detail::format_number(r.wall_clock_us);
    out += '\n';
  }
  return out;
}

}  // namespace nmfa
