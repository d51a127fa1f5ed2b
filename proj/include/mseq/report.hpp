#pragma once

// Report records and their CSV / JSON / text renderings.
//
// Counts are exact decimal integers; rationals are split into num and den
// columns (plus a float rendering where the schema has one). A CSV report is
// a sequence of tables separated by blank lines; a table may be preceded by
// "# ..." comment lines.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mseq/census.hpp"
#include "mseq/exact.hpp"
#include "mseq/lfsr.hpp"
#include "mseq/polytope.hpp"

namespace mseq {

enum class Format { csv, json, table };

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "table") return Format::table;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  friend bool operator==(const Table&, const Table&) = default;
};

inline std::string render_csv(const std::vector<Table>& tables) {
  std::ostringstream out;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (t) out << '\n';
    for (const auto& c : tables[t].comments) out << "# " << c << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(tables[t].header);
    for (const auto& r : tables[t].rows) line(r);
  }
  return out.str();
}

/// Aligned columns for terminals.
inline std::string render_text(const std::vector<Table>& tables) {
  std::ostringstream out;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& tb = tables[t];
    if (t) out << '\n';
    for (const auto& c : tb.comments) out << c << '\n';
    std::vector<std::size_t> width(tb.header.size(), 0);
    for (std::size_t i = 0; i < tb.header.size(); ++i) width[i] = tb.header[i].size();
    for (const auto& r : tb.rows)
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += "  ";
        s += std::string(width[i] - cells[i].size(), ' ') + cells[i];
      }
      out << s << '\n';
    };
    line(tb.header);
    for (const auto& r : tb.rows) line(r);
  }
  return out.str();
}

/// Inverse of render_csv.
inline std::vector<Table> parse_csv(std::string_view text) {
  std::vector<Table> tables;
  Table cur;
  bool open = false;
  auto flush = [&] {
    if (open) tables.push_back(std::move(cur));
    cur = Table{};
    open = false;
  };
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      if (open && !cur.header.empty()) flush();
      std::string_view c = line.substr(1);
      if (!c.empty() && c.front() == ' ') c.remove_prefix(1);
      cur.comments.emplace_back(c);
      open = true;
      continue;
    }
    std::vector<std::string> cells;
    std::size_t s = 0;
    for (std::size_t i = 0; i <= line.size(); ++i)
      if (i == line.size() || line[i] == ',') {
        cells.emplace_back(line.substr(s, i - s));
        s = i + 1;
      }
    if (cur.header.empty())
      cur.header = std::move(cells);
    else
      cur.rows.push_back(std::move(cells));
    open = true;
  }
  flush();
  return tables;
}

namespace detail {

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("expected true/false, got '" + s + "'");
}

inline void expect_header(const Table& t, const std::vector<std::string>& header) {
  if (t.header != header) throw std::invalid_argument("unexpected CSV header");
}

inline std::int64_t to_i64(const std::string& s) { return std::stoll(s); }

}  // namespace detail

// ---------------------------------------------------------------- census

struct CensusBlock {
  DistributionTable distribution;
  DeviationTable deviation;
  ExpectationRecord expectation;
  BoundFitReport bounds;
  friend bool operator==(const CensusBlock&, const CensusBlock&) = default;
};

inline CensusBlock make_census_block(const DistributionTable& t) {
  return {t, deviation_table(t), expectation(t), fit_bounds(t)};
}

inline const std::vector<std::string> kDistributionHeader{"q", "m", "n", "L", "count"};
inline const std::vector<std::string> kDeviationHeader{"q", "m", "n", "delta", "count"};
inline const std::vector<std::string> kExpectationHeader{"q",         "m",            "n",           "e_num",
                                                         "e_den",     "e_float",      "ceil_term",   "residual_num",
                                                         "residual_den"};
inline const std::vector<std::string> kBoundsHeader{"q",           "m",           "n",
                                                    "c_combined_num", "c_combined_den", "c_zdelta_num",
                                                    "c_zdelta_den",   "lemma2_ok"};
inline const std::vector<std::string> kPolytopeHeader{"m", "L", "H", "rho", "M", "bound", "ok"};
inline const std::vector<std::string> kFunctionalMaxHeader{"m", "L", "value", "argmax", "unique"};
inline const std::vector<std::string> kVertexHeader{"m", "L", "H", "nu", "coords"};
inline const std::vector<std::string> kMonteCarloHeader{"q", "m", "n", "samples", "seed", "mean", "stderr"};

inline std::vector<Table> census_tables(const CensusBlock& b) {
  const auto key = [&](std::size_t m, std::size_t n) {
    return std::vector<std::string>{std::to_string(b.distribution.q), std::to_string(m), std::to_string(n)};
  };
  const auto& d = b.distribution;
  Table dist{{"census q=" + std::to_string(d.q) + " m=" + std::to_string(d.m) + " n=" + std::to_string(d.n)},
             kDistributionHeader,
             {}};
  for (std::size_t L = 0; L < d.counts.size(); ++L) {
    auto r = key(d.m, d.n);
    r.push_back(std::to_string(L));
    r.push_back(to_string(d.counts[L]));
    dist.rows.push_back(std::move(r));
  }
  Table dev{{}, kDeviationHeader, {}};
  for (const auto& [delta, z] : b.deviation.zcounts) {
    auto r = key(d.m, d.n);
    r.push_back(std::to_string(delta));
    r.push_back(to_string(z));
    dev.rows.push_back(std::move(r));
  }
  const auto& e = b.expectation;
  auto er = key(d.m, d.n);
  er.insert(er.end(), {numerator(e.e_exact).str(), denominator(e.e_exact).str(), format_double(to_double(e.e_exact)),
                       std::to_string(e.ceil_term), numerator(e.residual).str(), denominator(e.residual).str()});
  const auto& f = b.bounds;
  auto br = key(d.m, d.n);
  br.insert(br.end(), {numerator(f.c_combined).str(), denominator(f.c_combined).str(), numerator(f.c_zdelta).str(),
                       denominator(f.c_zdelta).str(), detail::bool_str(f.c_lemma2_ok)});
  return {dist, dev, Table{{}, kExpectationHeader, {er}}, Table{{}, kBoundsHeader, {br}}};
}

/// Rebuilds census blocks from the tables of a parsed census CSV.
inline std::vector<CensusBlock> census_from_tables(const std::vector<Table>& tables) {
  if (tables.size() % 4 != 0) throw std::invalid_argument("census CSV must hold four tables per block");
  std::vector<CensusBlock> out;
  for (std::size_t i = 0; i < tables.size(); i += 4) {
    detail::expect_header(tables[i], kDistributionHeader);
    detail::expect_header(tables[i + 1], kDeviationHeader);
    detail::expect_header(tables[i + 2], kExpectationHeader);
    detail::expect_header(tables[i + 3], kBoundsHeader);
    const auto& er = tables[i + 2].rows.at(0);
    CensusBlock b;
    const int q = std::stoi(er[0]);
    const auto m = static_cast<std::size_t>(std::stoul(er[1]));
    const auto n = static_cast<std::size_t>(std::stoul(er[2]));
    b.distribution = {q, m, n, {}};
    for (const auto& r : tables[i].rows) b.distribution.counts.emplace_back(r.at(4).c_str());
    b.deviation = {q, m, n, complexity_center(m, n), {}};
    for (const auto& r : tables[i + 1].rows) b.deviation.zcounts[detail::to_i64(r.at(3))] = BigInt(r.at(4).c_str());
    b.expectation = {q, m, n, Rational(BigInt(er[3].c_str()), BigInt(er[4].c_str())), detail::to_i64(er[6]),
                     Rational(BigInt(er[7].c_str()), BigInt(er[8].c_str()))};
    const auto& br = tables[i + 3].rows.at(0);
    b.bounds = {q,
                m,
                n,
                detail::parse_bool(br[7]),
                Rational(BigInt(br[3].c_str()), BigInt(br[4].c_str())),
                Rational(BigInt(br[5].c_str()), BigInt(br[6].c_str()))};
    b.deviation.center = b.expectation.ceil_term;
    out.push_back(std::move(b));
  }
  return out;
}

inline nlohmann::ordered_json rational_json(const Rational& r) {
  return {{"num", numerator(r).str()}, {"den", denominator(r).str()}, {"float", to_double(r)}};
}

inline Rational rational_from_json(const nlohmann::ordered_json& j) {
  return Rational(BigInt(j.at("num").get<std::string>().c_str()), BigInt(j.at("den").get<std::string>().c_str()));
}

inline nlohmann::ordered_json census_json(const CensusBlock& b) {
  nlohmann::ordered_json j;
  j["q"] = b.distribution.q;
  j["m"] = b.distribution.m;
  j["n"] = b.distribution.n;
  auto& counts = j["distribution"] = nlohmann::ordered_json::array();
  for (const auto& c : b.distribution.counts) counts.push_back(to_string(c));
  j["center"] = b.deviation.center;
  auto& dev = j["deviation"] = nlohmann::ordered_json::array();
  for (const auto& [delta, z] : b.deviation.zcounts) dev.push_back({{"delta", delta}, {"count", to_string(z)}});
  j["expectation"] = {{"e", rational_json(b.expectation.e_exact)},
                      {"ceil_term", b.expectation.ceil_term},
                      {"residual", rational_json(b.expectation.residual)}};
  j["bounds"] = {{"c_combined", rational_json(b.bounds.c_combined)},
                 {"c_zdelta", rational_json(b.bounds.c_zdelta)},
                 {"lemma2_ok", b.bounds.c_lemma2_ok}};
  return j;
}

inline CensusBlock census_from_json(const nlohmann::ordered_json& j) {
  const int q = j.at("q").get<int>();
  const auto m = j.at("m").get<std::size_t>();
  const auto n = j.at("n").get<std::size_t>();
  CensusBlock b;
  b.distribution = {q, m, n, {}};
  for (const auto& c : j.at("distribution")) b.distribution.counts.emplace_back(c.get<std::string>().c_str());
  b.deviation = {q, m, n, j.at("center").get<std::int64_t>(), {}};
  for (const auto& d : j.at("deviation"))
    b.deviation.zcounts[d.at("delta").get<std::int64_t>()] = BigInt(d.at("count").get<std::string>().c_str());
  const auto& e = j.at("expectation");
  b.expectation = {q, m, n, rational_from_json(e.at("e")), e.at("ceil_term").get<std::int64_t>(),
                   rational_from_json(e.at("residual"))};
  const auto& f = j.at("bounds");
  b.bounds = {q, m, n, f.at("lemma2_ok").get<bool>(), rational_from_json(f.at("c_combined")),
              rational_from_json(f.at("c_zdelta"))};
  return b;
}

// ---------------------------------------------------------------- polytope

struct PolytopeRow {
  std::size_t m = 1;
  std::int64_t L = 0;
  std::int64_t H = 0;
  std::int64_t rho = 0;
  std::int64_t M = 0;
  BigInt bound;
  bool ok = false;
  friend bool operator==(const PolytopeRow&, const PolytopeRow&) = default;
};

inline PolytopeRow make_polytope_row(std::size_t m, std::int64_t L, std::int64_t H) {
  PolytopeRow r{m, L, H, rho(m, L, H), count_lattice_points(m, L, H), ipow(static_cast<std::uint64_t>(H + 1), m)};
  r.ok = r.rho <= r.M && BigInt(r.M) <= r.bound;
  return r;
}

inline std::string point_string(const RationalPoint& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ";" : "") + to_string(x[i]);
  return s;
}

inline RationalPoint parse_point(const std::string& s) {
  RationalPoint x;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == ';') {
      x.push_back(parse_rational(s.substr(start, i - start)));
      start = i + 1;
    }
  return x;
}

inline std::vector<std::string> polytope_cells(const PolytopeRow& r) {
  return {std::to_string(r.m), std::to_string(r.L), std::to_string(r.H),       std::to_string(r.rho),
          std::to_string(r.M), to_string(r.bound),  detail::bool_str(r.ok)};
}

inline PolytopeRow polytope_row_from_cells(const std::vector<std::string>& c) {
  return {static_cast<std::size_t>(std::stoul(c.at(0))), detail::to_i64(c.at(1)), detail::to_i64(c.at(2)),
          detail::to_i64(c.at(3)), detail::to_i64(c.at(4)), BigInt(c.at(5).c_str()), detail::parse_bool(c.at(6))};
}

// ---------------------------------------------------------------- misc

inline std::string polynomial_string(const ConnectionPoly& c) {
  std::string s = "1";
  for (std::size_t k = 1; k <= c.coeffs.size(); ++k) {
    const int v = c.coeffs[k - 1];
    if (v == 0) continue;
    s += "+";
    if (v != 1) s += std::to_string(v);
    s += k == 1 ? "x" : "x^" + std::to_string(k);
  }
  return s;
}

inline std::vector<std::string> montecarlo_cells(const MCEstimate& e) {
  return {std::to_string(e.q),    std::to_string(e.m), std::to_string(e.n),         std::to_string(e.samples),
          std::to_string(e.seed), format_double(e.mean), format_double(e.std_error)};
}

}  // namespace mseq
