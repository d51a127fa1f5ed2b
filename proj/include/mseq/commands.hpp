#pragma once

// Implementations behind the `mseq` subcommands. Each returns the exact
// bytes written to stdout; errors propagate as exceptions.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mseq/census.hpp"
#include "mseq/errors.hpp"
#include "mseq/lfsr.hpp"
#include "mseq/polytope.hpp"
#include "mseq/report.hpp"
#include "mseq/seqfile.hpp"
#include "mseq/verify.hpp"

namespace mseq {

/// Inclusive integer range written "a..b" or "a".
struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

inline Range parse_range(std::string_view s) {
  auto num = [&](std::string_view t) {
    std::int64_t v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw std::invalid_argument("bad range '" + std::string(s) + "'");
    return v;
  };
  const auto dots = s.find("..");
  Range r = dots == std::string_view::npos ? Range{num(s), num(s)} : Range{num(s.substr(0, dots)), num(s.substr(dots + 2))};
  if (r.lo < 0 || r.hi < r.lo) throw std::invalid_argument("bad range '" + std::string(s) + "'");
  return r;
}

inline DigitPoly parse_modulus(std::string_view s) {
  DigitPoly d;
  for (auto [tok, col] : detail::split(s, ',', 1)) d.push_back(static_cast<int>(detail::parse_int(tok, 1, col)));
  return d;
}

/// Budget from MSEQ_BUDGET when set, else the built-in default.
inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("MSEQ_BUDGET"); env && *env) {
    std::uint64_t v = 0;
    std::string_view s(env);
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw std::invalid_argument("MSEQ_BUDGET must be a nonnegative integer");
    return v;
  }
  return kDefaultBudget;
}

inline std::string emit(const std::vector<Table>& tables, Format f) {
  return f == Format::table ? render_text(tables) : render_csv(tables);
}

// ---------------------------------------------------------------- profile

inline std::string cmd_profile(std::string_view seqfile_text, Format format) {
  const SeqFile file = parse_seqfile(seqfile_text);
  const Multisequence t = file.multisequence();
  const ComplexityProfile prof = jlc_profile(t);
  const JlcResult fin = jlc_fast(t);

  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["q"] = file.q;
    j["m"] = file.m;
    j["n"] = file.n;
    j["profile"] = prof.values;
    j["L"] = fin.L;
    std::vector<int> coeffs(fin.witness.coeffs.begin(), fin.witness.coeffs.end());
    j["witness"] = coeffs;
    j["polynomial"] = polynomial_string(fin.witness);
    return j.dump(2) + "\n";
  }
  Table per_prefix{{}, {"k", "L"}, {}};
  for (std::size_t k = 0; k < prof.values.size(); ++k)
    per_prefix.rows.push_back({std::to_string(k + 1), std::to_string(prof.values[k])});
  Table final_row{{}, {"L", "connection_polynomial"}, {{std::to_string(fin.L), polynomial_string(fin.witness)}}};
  return emit({per_prefix, final_row}, format);
}

// ---------------------------------------------------------------- census

struct CensusArgs {
  int q = 2;
  std::size_t m = 1;
  Range n{1, 1};
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
  Format format = Format::csv;
  std::optional<DigitPoly> modulus;
};

inline std::string cmd_census(const CensusArgs& a) {
  const FieldSpec f = field_make(a.q, a.modulus);
  for (std::int64_t n = a.n.lo; n <= a.n.hi; ++n) {
    const auto space = state_space(a.q, a.m, static_cast<std::size_t>(n));
    if (!space || *space > a.budget)
      throw BudgetExceeded("n=" + std::to_string(n) + ": q^(nm) for q=" + std::to_string(a.q) +
                           " m=" + std::to_string(a.m) + " exceeds budget " + std::to_string(a.budget));
  }
  std::vector<CensusBlock> blocks;
  for (std::int64_t n = a.n.lo; n <= a.n.hi; ++n)
    blocks.push_back(make_census_block(enumerate_distribution(f, a.m, static_cast<std::size_t>(n), {a.budget, a.jobs})));

  if (a.format == Format::json) {
    nlohmann::ordered_json j;
    auto& arr = j["census"] = nlohmann::ordered_json::array();
    for (const auto& b : blocks) arr.push_back(census_json(b));
    return j.dump(2) + "\n";
  }
  std::vector<Table> tables;
  for (const auto& b : blocks) {
    auto t = census_tables(b);
    tables.insert(tables.end(), t.begin(), t.end());
  }
  return emit(tables, a.format);
}

// ---------------------------------------------------------------- polytope

struct PolytopeArgs {
  std::size_t m = 1;
  Range L{0, 0};
  bool vertices = false;
  Format format = Format::csv;
};

inline std::string cmd_polytope(const PolytopeArgs& a) {
  if (a.m < 1) throw std::invalid_argument("m must be at least 1");
  const auto mm = static_cast<std::int64_t>(a.m);
  std::vector<PolytopeRow> rows;
  std::vector<FunctionalMax> maxima;
  std::vector<std::pair<std::int64_t, VertexSet>> vsets;
  for (std::int64_t L = a.L.lo; L <= a.L.hi; ++L) {
    for (std::int64_t H = 0; H <= (mm - 1) * L; ++H) {
      rows.push_back(make_polytope_row(a.m, L, H));
      if (a.vertices && L >= 1) vsets.emplace_back(L, vertices(a.m, L, H));
    }
    maxima.push_back(functional_max(a.m, L));
  }

  if (a.format == Format::json) {
    nlohmann::ordered_json j;
    j["m"] = a.m;
    auto& jr = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      jr.push_back({{"L", r.L}, {"H", r.H}, {"rho", r.rho}, {"M", r.M}, {"bound", to_string(r.bound)}, {"ok", r.ok}});
    auto& jm = j["functional_max"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < maxima.size(); ++i)
      jm.push_back({{"L", a.L.lo + static_cast<std::int64_t>(i)},
                    {"value", maxima[i].value},
                    {"argmax", point_string(maxima[i].argmax)},
                    {"unique", maxima[i].unique}});
    if (a.vertices) {
      auto& jv = j["vertices"] = nlohmann::ordered_json::array();
      for (const auto& [L, vs] : vsets)
        for (std::size_t nu = 1; nu <= vs.vertices.size(); ++nu)
          jv.push_back({{"L", L}, {"H", vs.H}, {"nu", nu}, {"coords", point_string(vs.vertices[nu - 1])}});
    }
    return j.dump(2) + "\n";
  }

  Table main{{}, kPolytopeHeader, {}};
  for (const auto& r : rows) main.rows.push_back(polytope_cells(r));
  Table fm{{}, kFunctionalMaxHeader, {}};
  for (std::size_t i = 0; i < maxima.size(); ++i)
    fm.rows.push_back({std::to_string(a.m), std::to_string(a.L.lo + static_cast<std::int64_t>(i)),
                       std::to_string(maxima[i].value), point_string(maxima[i].argmax),
                       detail::bool_str(maxima[i].unique)});
  std::vector<Table> tables{main, fm};
  if (a.vertices) {
    Table vt{{}, kVertexHeader, {}};
    for (const auto& [L, vs] : vsets)
      for (std::size_t nu = 1; nu <= vs.vertices.size(); ++nu)
        vt.rows.push_back({std::to_string(a.m), std::to_string(L), std::to_string(vs.H), std::to_string(nu),
                           point_string(vs.vertices[nu - 1])});
    tables.push_back(std::move(vt));
  }
  return emit(tables, a.format);
}

// ---------------------------------------------------------------- montecarlo

struct MonteCarloArgs {
  int q = 2;
  std::size_t m = 1;
  std::size_t n = 0;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  Format format = Format::csv;
  std::optional<DigitPoly> modulus;
};

inline std::string cmd_montecarlo(const MonteCarloArgs& a) {
  const MCEstimate e = mc_estimate(field_make(a.q, a.modulus), a.m, a.n, a.samples, a.seed, a.jobs);
  if (a.format == Format::json) {
    nlohmann::ordered_json j{{"q", e.q},       {"m", e.m},       {"n", e.n},          {"samples", e.samples},
                             {"seed", e.seed}, {"mean", e.mean}, {"stderr", e.std_error}};
    return j.dump(2) + "\n";
  }
  return emit({Table{{}, kMonteCarloHeader, {montecarlo_cells(e)}}}, a.format);
}

// ---------------------------------------------------------------- series

inline std::string cmd_series(std::uint64_t q, std::size_t m, double eps, Format format) {
  const SeriesBracket b = series_c1(q, m, eps);
  if (format == Format::json) {
    nlohmann::ordered_json j{{"q", q},
                             {"m", m},
                             {"terms", b.terms},
                             {"lower", rational_json(b.lower)},
                             {"upper", rational_json(b.upper)}};
    return j.dump(2) + "\n";
  }
  Table t{{},
          {"q", "m", "terms", "lower_num", "lower_den", "upper_num", "upper_den", "lower_float", "upper_float"},
          {{std::to_string(q), std::to_string(m), std::to_string(b.terms), numerator(b.lower).str(),
            denominator(b.lower).str(), numerator(b.upper).str(), denominator(b.upper).str(),
            format_double(to_double(b.lower)), format_double(to_double(b.upper))}}};
  return emit({t}, format);
}

// ---------------------------------------------------------------- verify

struct VerifyOutcome {
  std::string text;
  bool passed = false;
};

inline VerifyOutcome cmd_verify(std::string_view suite, const VerifyOptions& o) {
  const SuiteReport r = run_suite(suite, o);
  std::ostringstream out;
  for (const auto& c : r.checks) {
    out << (c.passed() ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)";
    if (c.counterexample) out << "\n  counterexample: " << *c.counterexample;
    out << '\n';
  }
  out << "suite " << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << '\n';
  return {out.str(), r.passed()};
}

}  // namespace mseq
