#pragma once

// Line-oriented text formats for coordinates, words, matrices, erasure patterns,
// repair plans, verification reports and tables.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elrc/analysis.hpp"
#include "elrc/code.hpp"
#include "elrc/error.hpp"
#include "elrc/repair.hpp"

namespace elrc::text {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) {
    out.push_back(std::move(tok));
  }
  return out;
}

inline std::vector<std::string> lines(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string line; std::getline(in, line);) {
    if (!trim(line).empty()) {
      out.emplace_back(trim(line));
    }
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace detail

// --- coordinates -----------------------------------------------------------

/// Canonical token: digits joined by commas, e.g. "0,2,1".
[[nodiscard]] inline std::string format_coord(const Coord& a) {
  std::string out;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j > 0) {
      out += ',';
    }
    out += std::to_string(a[j]);
  }
  return out;
}

/// Accepts the comma form, and for r <= 8 also the undelimited form "021".
[[nodiscard]] inline Coord parse_coord(const CodeParams& p, std::string_view token) {
  std::vector<unsigned> digits;
  if (token.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = token.find(',', start);
      const auto piece = token.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      digits.push_back(static_cast<unsigned>(detail::parse_uint(piece, "coordinate digit")));
      if (comma == std::string_view::npos) {
        break;
      }
      start = comma + 1;
    }
  } else if (p.m() == 1) {
    digits.push_back(static_cast<unsigned>(detail::parse_uint(token, "coordinate digit")));
  } else if (p.r() <= 8) {
    if (token.size() != p.m()) {
      throw ParseError("coordinate '" + std::string(token) + "' must have " + std::to_string(p.m()) + " digits");
    }
    for (char ch : token) {
      if (ch < '0' || ch > '9') {
        throw ParseError("invalid coordinate '" + std::string(token) + "'");
      }
      digits.push_back(static_cast<unsigned>(ch - '0'));
    }
  } else {
    throw ParseError("coordinate '" + std::string(token) + "' must be comma-separated when r > 8");
  }
  Coord c(std::move(digits));
  validate_coord(p, c);
  return c;
}

// --- words -------------------------------------------------------------------

[[nodiscard]] inline std::string format_word(const BitWord& w) { return w.to_string() + "\n"; }

[[nodiscard]] inline BitVector parse_bits(std::string_view text, std::size_t expected, std::string_view what) {
  const auto body = detail::trim(text);
  if (body.size() != expected) {
    throw ParseError(std::string(what) + " has " + std::to_string(body.size()) + " symbols, expected " +
                     std::to_string(expected));
  }
  return BitVector::from_string(body);
}

[[nodiscard]] inline BitWord parse_word(const CodeParams& p, std::string_view text) {
  return parse_bits(text, p.n(), "word");
}

[[nodiscard]] inline BitVector parse_info(const CodeParams& p, std::string_view text) {
  return parse_bits(text, p.k(), "information word");
}

/// '?' at erased positions.
[[nodiscard]] inline std::string format_masked_word(const MaskedWord& w) {
  std::string s = w.bits.to_string();
  for (auto rank : w.erased.ranks()) {
    s[rank] = '?';
  }
  return s + "\n";
}

[[nodiscard]] inline MaskedWord parse_masked_word(const CodeParams& p, std::string_view text) {
  auto body = std::string(detail::trim(text));
  if (body.size() != p.n()) {
    throw ParseError("word has " + std::to_string(body.size()) + " symbols, expected " + std::to_string(p.n()));
  }
  std::vector<std::size_t> erased;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '?') {
      erased.push_back(i);
      body[i] = '0';
    }
  }
  return {BitVector::from_string(body), ErasurePattern::from_ranks(p, std::move(erased))};
}

// --- parity-check matrix -------------------------------------------------------

[[nodiscard]] inline std::string format_matrix(const CodeParams& p, const ParityCheckMatrix& h) {
  std::string out = std::to_string(p.r()) + " " + std::to_string(p.m()) + " " + std::to_string(p.n()) + " " +
                    std::to_string(p.k()) + "\n";
  for (std::size_t i = 0; i < h.rows.rows(); ++i) {
    out += h.rows.row(i).to_string();
    out += '\n';
  }
  return out;
}

[[nodiscard]] inline std::pair<CodeParams, ParityCheckMatrix> parse_matrix(std::string_view text) {
  const auto rows = detail::lines(text);
  if (rows.empty()) {
    throw ParseError("matrix file is empty");
  }
  const auto header = detail::split_ws(rows.front());
  if (header.size() != 4) {
    throw ParseError("matrix header must be 'r m n k'");
  }
  const CodeParams p(static_cast<unsigned>(detail::parse_uint(header[0], "r")),
                     static_cast<unsigned>(detail::parse_uint(header[1], "m")));
  if (detail::parse_uint(header[2], "n") != p.n() || detail::parse_uint(header[3], "k") != p.k()) {
    throw ParseError("matrix header n/k disagree with r and m");
  }
  if (rows.size() - 1 != p.n() - p.k()) {
    throw ParseError("matrix has " + std::to_string(rows.size() - 1) + " rows, expected " +
                     std::to_string(p.n() - p.k()));
  }
  ParityCheckMatrix h{BitMatrix(0, p.n()), parity_ranks(p)};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    h.rows.push_back(parse_bits(rows[i], p.n(), "matrix row"));
  }
  return {p, std::move(h)};
}

// --- erasure patterns ------------------------------------------------------------

[[nodiscard]] inline std::string format_pattern(const CodeParams& p, const ErasurePattern& e) {
  std::string out;
  for (const auto& c : e.coords(p)) {
    if (!out.empty()) {
      out += ' ';
    }
    out += format_coord(c);
  }
  return out;
}

[[nodiscard]] inline ErasurePattern parse_pattern(const CodeParams& p, std::string_view text) {
  std::vector<Coord> coords;
  for (const auto& tok : detail::split_ws(text)) {
    coords.push_back(parse_coord(p, tok));
  }
  return ErasurePattern(p, coords);
}

// --- repair plans ----------------------------------------------------------------

/// One line per step: "repair <coord> axis <i> from <coord> ...", axis 1-based.
[[nodiscard]] inline std::string format_plan(const RepairPlan& plan) {
  std::string out;
  for (const auto& step : plan.steps) {
    out += "repair " + format_coord(step.target) + " axis " + std::to_string(step.axis + 1) + " from";
    for (const auto& s : step.sources) {
      out += ' ';
      out += format_coord(s);
    }
    out += '\n';
  }
  return out;
}

[[nodiscard]] inline RepairPlan parse_plan(const CodeParams& p, std::string_view text) {
  RepairPlan plan;
  std::size_t line_no = 0;
  for (const auto& line : detail::lines(text)) {
    ++line_no;
    const auto tok = detail::split_ws(line);
    if (tok.size() < 5 || tok[0] != "repair" || tok[2] != "axis" || tok[4] != "from") {
      throw ParseError("plan line " + std::to_string(line_no) + ": expected 'repair <coord> axis <i> from <coord> ...'");
    }
    const auto axis = detail::parse_uint(tok[3], "axis");
    if (axis < 1 || axis > p.m()) {
      throw ParseError("plan line " + std::to_string(line_no) + ": axis " + tok[3] + " out of range 1.." +
                       std::to_string(p.m()));
    }
    RepairStep step{parse_coord(p, tok[1]), static_cast<std::size_t>(axis - 1), {}};
    for (std::size_t i = 5; i < tok.size(); ++i) {
      step.sources.push_back(parse_coord(p, tok[i]));
    }
    std::sort(step.sources.begin(), step.sources.end());
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

// --- verification reports ----------------------------------------------------------

inline const char* mode_name(VerifyMode mode) { return mode == VerifyMode::exhaustive ? "exhaustive" : "random"; }

/// Header "r m mode max_size seed samples", then "checked <count>", then one
/// "FAIL <coords>" line per failing pattern in canonical order.
[[nodiscard]] inline std::string format_report(const VerificationReport& report) {
  const auto& p = report.params;
  std::string out = std::to_string(p.r()) + " " + std::to_string(p.m()) + " " + mode_name(report.mode) + " " +
                    std::to_string(report.max_size) + " " + std::to_string(report.seed) + " " +
                    std::to_string(report.samples) + "\n";
  out += "checked " + std::to_string(report.patterns_checked) + "\n";
  for (const auto& e : report.failures) {
    out += "FAIL " + format_pattern(p, e) + "\n";
  }
  return out;
}

[[nodiscard]] inline VerificationReport parse_report(std::string_view text) {
  const auto rows = detail::lines(text);
  if (rows.size() < 2) {
    throw ParseError("report needs a header and a 'checked' line");
  }
  const auto header = detail::split_ws(rows[0]);
  if (header.size() != 6 || (header[2] != "exhaustive" && header[2] != "random")) {
    throw ParseError("report header must be 'r m mode max_size seed samples'");
  }
  const CodeParams p(static_cast<unsigned>(detail::parse_uint(header[0], "r")),
                     static_cast<unsigned>(detail::parse_uint(header[1], "m")));
  VerificationReport report{p,
                            header[2] == "exhaustive" ? VerifyMode::exhaustive : VerifyMode::randomized,
                            static_cast<std::size_t>(detail::parse_uint(header[3], "max size")),
                            detail::parse_uint(header[4], "seed"),
                            detail::parse_uint(header[5], "samples"),
                            0,
                            {}};
  const auto checked = detail::split_ws(rows[1]);
  if (checked.size() != 2 || checked[0] != "checked") {
    throw ParseError("expected 'checked <count>'");
  }
  report.patterns_checked = detail::parse_uint(checked[1], "count");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    if (rows[i].rfind("FAIL", 0) != 0) {
      throw ParseError("unexpected report line '" + rows[i] + "'");
    }
    report.failures.push_back(parse_pattern(p, std::string_view(rows[i]).substr(4)));
  }
  return report;
}

// --- tables --------------------------------------------------------------------------

enum class TableStyle { text, csv };

/// Text style right-aligns every column to its widest cell, two spaces apart.
[[nodiscard]] inline std::string format_table(const std::vector<std::string>& header,
                                              const std::vector<std::vector<std::string>>& rows, TableStyle style) {
  std::string out;
  if (style == TableStyle::csv) {
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out += (i ? "," : "") + cells[i];
      }
      out += '\n';
    };
    emit(header);
    for (const auto& row : rows) {
      emit(row);
    }
    return out;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    width[i] = header[i].size();
    for (const auto& row : rows) {
      width[i] = std::max(width[i], row.at(i).size());
    }
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += (i ? "  " : "") + std::string(width[i] - cells[i].size(), ' ') + cells[i];
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) {
    emit(row);
  }
  return out;
}

[[nodiscard]] inline std::string format_table1(const std::vector<Table1Row>& rows, TableStyle style) {
  const bool csv = style == TableStyle::csv;
  std::vector<std::string> header =
      csv ? std::vector<std::string>{"m", "t", "k", "elrc_length", "all_symbol_locality_min_length",
                                     "cooperative_min_length"}
          : std::vector<std::string>{"m", "t", "k", "ELRC length", "(r,t+1)_a length", "(r,t)-CLRC length"};
  const std::string at_least = csv ? "" : ">=";
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({std::to_string(row.m), std::to_string(row.t), std::to_string(row.k),
                     std::to_string(row.n_construction), at_least + std::to_string(row.n_min_all_symbol_locality),
                     at_least + std::to_string(row.n_min_cooperative)});
  }
  return format_table(header, cells, style);
}

[[nodiscard]] inline std::string format_table2(const std::vector<Table2Row>& rows, TableStyle style) {
  const bool csv = style == TableStyle::csv;
  std::vector<std::string> header =
      csv ? std::vector<std::string>{"m", "k", "n", "sequential_tolerance", "parallel_tolerance"}
          : std::vector<std::string>{"m", "k", "n", "sequential tolerance", "parallel tolerance"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({std::to_string(row.m), std::to_string(row.k), std::to_string(row.n),
                     std::to_string(row.sequential_tolerance), std::to_string(row.parallel_tolerance)});
  }
  return format_table(header, cells, style);
}

[[nodiscard]] inline std::string format_bounds(const std::vector<BoundsRow>& rows, TableStyle style) {
  const std::vector<std::string> header{"r",        "t", "k", "n_construction", "n_min_parallel", "availability_rate_bound",
                                        "n_min_t2", "n_min_t3"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({std::to_string(row.r), std::to_string(row.t), std::to_string(row.k),
                     row.n_construction ? std::to_string(*row.n_construction) : "-",
                     std::to_string(row.n_min_parallel), row.availability_rate_bound.str(),
                     std::to_string(row.n_min_t2), std::to_string(row.n_min_t3)});
  }
  return format_table(header, cells, style);
}

}  // namespace elrc::text
