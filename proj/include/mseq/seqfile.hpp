#pragma once

// Seqfile text format:
//
//   q=<int> m=<int> n=<int> [mod=<comma-separated base-p digits>]
//   <row 1>
//   ...
//   <row m>
//
// Rows are strings of single digits when q <= 10 and comma-separated
// integers otherwise. Blank lines and lines starting with '#' are skipped.
// Modulus digits are listed constant term first. With n=0 the rows may be
// left out.

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mseq/errors.hpp"
#include "mseq/field.hpp"
#include "mseq/lfsr.hpp"

namespace mseq {

struct SeqFile {
  int q = 2;
  std::size_t m = 1;
  std::size_t n = 0;
  std::optional<DigitPoly> modulus;
  std::vector<std::vector<int>> rows;

  Multisequence multisequence() const { return Multisequence(field_make(q, modulus), rows); }
};

namespace detail {

inline long parse_int(std::string_view s, std::size_t line, std::size_t col) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + std::string(s) + "'", line, col);
  return v;
}

/// Splits on `sep`, reporting each field's 1-based column.
inline std::vector<std::pair<std::string_view, std::size_t>> split(std::string_view s, char sep,
                                                                   std::size_t base_col) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start), base_col + start);
      start = i + 1;
    }
  }
  return out;
}

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses seqfile text. Syntax problems raise ParseError; symbols outside
/// [0, q) raise FieldError naming the row and position.
inline SeqFile parse_seqfile(std::string_view text) {
  std::vector<std::pair<std::string_view, std::size_t>> lines;  // content, 1-based line number
  {
    std::size_t lineno = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i < text.size() && text[i] != '\n') continue;
      ++lineno;
      std::string_view raw = text.substr(start, i - start);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      start = i + 1;
      const std::string_view t = detail::trim_view(raw);
      if (t.empty() || t.front() == '#') continue;
      lines.emplace_back(raw, lineno);
    }
  }
  if (lines.empty()) throw ParseError("missing header line", 1, 1);

  SeqFile f;
  bool have_q = false, have_m = false, have_n = false;
  const auto [header, hline] = lines.front();
  std::size_t pos = 0;
  while (pos < header.size()) {
    while (pos < header.size() && std::isspace(static_cast<unsigned char>(header[pos]))) ++pos;
    if (pos == header.size()) break;
    std::size_t end = pos;
    while (end < header.size() && !std::isspace(static_cast<unsigned char>(header[end]))) ++end;
    const std::string_view tok = header.substr(pos, end - pos);
    const std::size_t col = pos + 1;
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(tok) + "'", hline, col);
    const std::string_view key = tok.substr(0, eq);
    const std::string_view val = tok.substr(eq + 1);
    const std::size_t vcol = col + eq + 1;
    if (key == "q") {
      f.q = static_cast<int>(detail::parse_int(val, hline, vcol));
      have_q = true;
    } else if (key == "m") {
      const long v = detail::parse_int(val, hline, vcol);
      if (v < 1) throw ParseError("m must be at least 1", hline, vcol);
      f.m = static_cast<std::size_t>(v);
      have_m = true;
    } else if (key == "n") {
      const long v = detail::parse_int(val, hline, vcol);
      if (v < 0) throw ParseError("n must be nonnegative", hline, vcol);
      f.n = static_cast<std::size_t>(v);
      have_n = true;
    } else if (key == "mod") {
      DigitPoly digits;
      for (auto [d, dcol] : detail::split(val, ',', vcol))
        digits.push_back(static_cast<int>(detail::parse_int(d, hline, dcol)));
      f.modulus = std::move(digits);
    } else {
      throw ParseError("unknown header key '" + std::string(key) + "'", hline, col);
    }
    pos = end;
  }
  if (!have_q || !have_m || !have_n) throw ParseError("header needs q=, m= and n=", hline, 1);
  if (f.q < 2 || f.q > 256) throw ParseError("q must lie in 2..256", hline, 1);

  if (f.n == 0 && lines.size() == 1) {
    // empty rows are blank lines, which the reader skips
    f.rows.assign(f.m, {});
    return f;
  }
  if (lines.size() - 1 != f.m) {
    const std::size_t at = lines.size() > f.m + 1 ? lines[f.m + 1].second : lines.back().second;
    throw ParseError("expected " + std::to_string(f.m) + " rows, found " + std::to_string(lines.size() - 1), at, 1);
  }

  for (std::size_t i = 0; i < f.m; ++i) {
    const auto [raw, lineno] = lines[i + 1];
    std::size_t lead = 0;
    while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
    const std::string_view body = detail::trim_view(raw);
    std::vector<int> row;
    std::vector<std::size_t> cols;
    if (f.q <= 10) {
      for (std::size_t k = 0; k < body.size(); ++k) {
        const char c = body[k];
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError(std::string("expected a digit, got '") + c + "'", lineno, lead + k + 1);
        row.push_back(c - '0');
        cols.push_back(lead + k + 1);
      }
    } else if (!body.empty()) {
      for (auto [tok, tcol] : detail::split(body, ',', lead + 1)) {
        row.push_back(static_cast<int>(detail::parse_int(detail::trim_view(tok), lineno, tcol)));
        cols.push_back(tcol);
      }
    }
    if (row.size() != f.n)
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " symbols, expected " +
                           std::to_string(f.n),
                       lineno, 1);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] < 0 || row[j] >= f.q)
        throw FieldError("symbol " + std::to_string(row[j]) + " at row " + std::to_string(i + 1) + ", position " +
                             std::to_string(j + 1) + " (line " + std::to_string(lineno) + ", column " +
                             std::to_string(cols[j]) + ") is outside [0, " + std::to_string(f.q) + ")",
                         i + 1, j + 1);
    f.rows.push_back(std::move(row));
  }
  return f;
}

inline std::string write_seqfile(const SeqFile& f) {
  std::ostringstream out;
  out << "q=" << f.q << " m=" << f.m << " n=" << f.n;
  if (f.modulus) {
    out << " mod=";
    for (std::size_t i = 0; i < f.modulus->size(); ++i) out << (i ? "," : "") << (*f.modulus)[i];
  }
  out << '\n';
  for (const auto& row : f.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (f.q > 10 && j > 0) out << ',';
      out << row[j];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mseq
