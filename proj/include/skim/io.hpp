// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text formats.
//
//   matrix:  "items elements" header, then one "i j u" line per entry
//   graph:   "n m" header, then exactly m "src dst w" lines
//   alpha table: one "x value" line per breakpoint
//   results: CSV, header "rank,item,estimated_gain,exact_gain,cumulative_influence"
//
// Blank lines and lines starting with '#' are skipped.

#ifndef SKIM_IO_HPP_
#define SKIM_IO_HPP_

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skim/graph.hpp"
#include "skim/types.hpp"
#include "skim/utility_family.hpp"
#include "skim/utility_matrix.hpp"

namespace skim {

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank, non-comment line split on whitespace; false at EOF.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      fields.clear();
      std::istringstream ss(line);
      std::string f;
      while (ss >> f) fields.push_back(f);
      return true;
    }
    if (in_.bad()) throw InputError("read error");
    return false;
  }

  std::size_t line() const noexcept { return line_no_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_); }

  std::uint64_t to_uint(const std::string& s) const {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("expected a non-negative integer, got '" + s + "'");
    return v;
  }

  double to_double(const std::string& s) const {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v))
      fail("expected a number, got '" + s + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace detail

inline SparseUtilityMatrix parse_matrix(std::istream& in) {
  detail::LineReader r(in);
  std::vector<std::string> f;
  if (!r.next(f)) throw ParseError("missing header", r.line() == 0 ? 1 : r.line());
  if (f.size() != 2) r.fail("header must be 'items elements'");
  const std::size_t n_items = r.to_uint(f[0]);
  const std::size_t n_elements = r.to_uint(f[1]);
  std::vector<UtilityEntry> entries;
  std::set<std::pair<ItemId, ElementId>> seen;
  while (r.next(f)) {
    if (f.size() != 3) r.fail("expected 'i j u'");
    const auto i = r.to_uint(f[0]);
    const auto j = r.to_uint(f[1]);
    const double u = r.to_double(f[2]);
    if (i >= n_items) r.fail("item id out of range");
    if (j >= n_elements) r.fail("element id out of range");
    if (!seen.emplace(static_cast<ItemId>(i), static_cast<ElementId>(j)).second)
      r.fail("duplicate entry (" + f[0] + ", " + f[1] + ")");
    if (!(u > 0.0) || !std::isfinite(u))
      throw InputError("line " + std::to_string(r.line()) + ": utility must be positive and finite");
    entries.push_back({static_cast<ItemId>(i), static_cast<ElementId>(j), u});
  }
  return SparseUtilityMatrix(n_items, n_elements, std::move(entries));
}

inline DiGraph parse_graph(std::istream& in) {
  detail::LineReader r(in);
  std::vector<std::string> f;
  if (!r.next(f)) throw ParseError("missing header", r.line() == 0 ? 1 : r.line());
  if (f.size() != 2) r.fail("header must be 'n m'");
  DiGraph g;
  g.n = r.to_uint(f[0]);
  const std::size_t m = r.to_uint(f[1]);
  g.edges.reserve(m);
  while (r.next(f)) {
    if (g.edges.size() == m) r.fail("more edges than declared");
    if (f.size() != 3) r.fail("expected 'src dst w'");
    const auto s = r.to_uint(f[0]);
    const auto d = r.to_uint(f[1]);
    const double w = r.to_double(f[2]);
    if (s >= g.n || d >= g.n) r.fail("node id out of range");
    if (!(w > 0.0) || !std::isfinite(w))
      throw InputError("line " + std::to_string(r.line()) + ": edge weight must be positive and finite");
    g.edges.push_back({static_cast<NodeId>(s), static_cast<NodeId>(d), w});
  }
  if (g.edges.size() != m)
    throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(g.edges.size()),
                     r.line());
  return g;
}

inline SparseUtilityMatrix read_matrix(const std::string& path) {
  auto in = detail::open_in(path);
  return parse_matrix(in);
}

inline DiGraph read_graph(const std::string& path) {
  auto in = detail::open_in(path);
  return parse_graph(in);
}

/// Two columns "x value"; x strictly increasing, values non-increasing.
inline TableAlpha parse_alpha_table(std::istream& in) {
  detail::LineReader r(in);
  std::vector<std::string> f;
  TableAlpha t;
  while (r.next(f)) {
    if (f.size() != 2) r.fail("expected 'x value'");
    const double x = r.to_double(f[0]);
    const double v = r.to_double(f[1]);
    if (!t.points.empty() && !(x > t.points.back().first)) r.fail("breakpoints must increase");
    if (!t.points.empty() && v > t.points.back().second) r.fail("values must be non-increasing");
    if (v < 0.0) r.fail("values must be non-negative");
    t.points.emplace_back(x, v);
  }
  if (t.points.empty()) throw ParseError("alpha table is empty", 0);
  return t;
}

/// "threshold:T", "inverse", "exp:sigma" or "table:path".
inline Alpha parse_alpha(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&](const char* what) {
    char* end = nullptr;
    const double v = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size())
      throw InputError(std::string("alpha '") + text + "': " + what + " must be a number");
    return v;
  };
  if (name == "inverse" && colon == std::string::npos) return Alpha(InverseAlpha{});
  if (name == "threshold") return Alpha(ThresholdAlpha{number("T")});
  if (name == "exp") return Alpha(ExponentialAlpha{number("sigma")});
  if (name == "table") {
    if (arg.empty()) throw InputError("alpha 'table:' needs a path");
    auto in = detail::open_in(arg);
    return Alpha(parse_alpha_table(in));
  }
  throw InputError("unknown alpha '" + text + "'");
}

inline void write_matrix(std::ostream& out, const SparseUtilityMatrix& m) {
  out << m.n_items() << ' ' << m.n_elements() << '\n';
  for (const auto& e : m.entries()) {
    out << e.item << ' ' << e.element << ' ' << detail::fmt("%.17g", e.utility) << '\n';
  }
}

inline void write_graph(std::ostream& out, const DiGraph& g) {
  out << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& e : g.edges) {
    out << e.src << ' ' << e.dst << ' ' << detail::fmt("%.17g", e.weight) << '\n';
  }
}

inline constexpr std::string_view kResultsHeader =
    "rank,item,estimated_gain,exact_gain,cumulative_influence";

/// One row per seed; numbers with 12 significant digits, an empty
/// estimated_gain when the algorithm has none.
inline void emit_results(const GreedySequence& seq, std::ostream& out) {
  out << kResultsHeader << '\n';
  for (std::size_t r = 0; r < seq.size(); ++r) {
    const auto& s = seq[r];
    out << (r + 1) << ',' << s.item << ',';
    if (s.estimated_gain) out << detail::fmt("%.12g", *s.estimated_gain);
    out << ',' << detail::fmt("%.12g", s.exact_gain) << ','
        << detail::fmt("%.12g", s.cumulative_influence) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing results");
}

inline void emit_results(const GreedySequence& seq, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit_results(seq, out);
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace skim

#endif  // SKIM_IO_HPP_
