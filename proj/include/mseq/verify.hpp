#pragma once

// Named verification suites run by `mseq verify <suite>`. Each suite runs a
// list of checks over a fixed grid and keeps the first counterexample.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mseq/census.hpp"
#include "mseq/errors.hpp"
#include "mseq/lfsr.hpp"
#include "mseq/polytope.hpp"

namespace mseq {

struct CensusCell {
  int q;
  std::size_t m;
  std::size_t n_max;
};

/// Exhaustive grid shared by the census-based suites.
inline const std::vector<CensusCell> kCensusGrid{{2, 1, 14}, {2, 2, 9}, {2, 3, 6}, {3, 1, 8}, {3, 2, 5}};

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
  std::uint64_t seed = 20240601;
};

struct CheckResult {
  std::string name;
  std::uint64_t cases = 0;
  std::optional<std::string> counterexample;
  bool passed() const { return !counterexample; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

/// Accumulates cases for one check, recording only the first failure.
class Check {
 public:
  explicit Check(std::string name) { r_.name = std::move(name); }
  void expect(bool ok, const std::function<std::string()>& describe) {
    ++r_.cases;
    if (!ok && !r_.counterexample) r_.counterexample = describe();
  }
  CheckResult result() && { return std::move(r_); }

 private:
  CheckResult r_;
};

/// Max of the second half of `values` is at most `factor` times the max of
/// the first half. The first half holds the first floor(k/2) entries.
inline bool bounded_growth(const std::vector<Rational>& values, const Rational& factor) {
  const std::size_t half = values.size() / 2;
  if (half == 0) return true;
  Rational first = values[0], second = values[half];
  for (std::size_t i = 0; i < half; ++i) first = std::max(first, values[i]);
  for (std::size_t i = half; i < values.size(); ++i) second = std::max(second, values[i]);
  return second <= first * factor;
}

namespace detail {

inline std::string cell_name(int q, std::size_t m, std::size_t n) {
  return "q=" + std::to_string(q) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
}

/// Census tables for the whole grid, keyed by (q, m) then indexed by n-1.
inline std::map<std::pair<int, std::size_t>, std::vector<DistributionTable>> census_grid(const VerifyOptions& o) {
  std::map<std::pair<int, std::size_t>, std::vector<DistributionTable>> out;
  for (const auto& c : kCensusGrid)
    for (std::size_t n = 1; n <= c.n_max; ++n)
      out[{c.q, c.m}].push_back(enumerate_distribution(c.q, c.m, n, {o.budget, o.jobs}));
  return out;
}

inline SuiteReport suite_lemma2(const VerifyOptions& o) {
  Check mass("mass conservation"), lemma2("N(L) <= q^((m+1)L)");
  for (const auto& [key, tables] : census_grid(o))
    for (const auto& t : tables) {
      mass.expect(t.total() == ipow(t.q, t.m * t.n), [&] {
        return cell_name(t.q, t.m, t.n) + " total=" + to_string(t.total());
      });
      for (std::size_t L = 0; L < t.counts.size(); ++L)
        lemma2.expect(t.counts[L] <= ipow(t.q, (t.m + 1) * L), [&] {
          return cell_name(t.q, t.m, t.n) + " L=" + std::to_string(L) + " count=" + to_string(t.counts[L]);
        });
    }
  return {"lemma2", {std::move(mass).result(), std::move(lemma2).result()}};
}

inline SuiteReport suite_bounds(const VerifyOptions& o) {
  Check rueppel("|E - n/2| <= 1 for q=2, m=1"), residual("|E - ceil(mn/(m+1))| <= 3/2"),
      residual_growth("residual second-half max <= 5/4 first-half max"),
      window("ceil(mn/(m+1)) - 3/2 <= E <= ceil(mn/(m+1)) + 3/2"), finite("fitted constants finite"),
      zgrowth("Z(delta) constant second-half max <= 5/4 first-half max");
  const Rational cap(3, 2), factor(5, 4);
  for (const auto& [key, tables] : census_grid(o)) {
    std::vector<Rational> residuals, zconst;
    for (const auto& t : tables) {
      const auto e = expectation(t);
      const auto b = fit_bounds(t);
      const auto name = cell_name(t.q, t.m, t.n);
      if (t.q == 2 && t.m == 1)
        rueppel.expect(abs(e.e_exact - Rational(static_cast<std::int64_t>(t.n), 2)) <= 1,
                       [&] { return name + " E=" + to_string(e.e_exact); });
      residual.expect(abs(e.residual) <= cap, [&] { return name + " residual=" + to_string(e.residual); });
      window.expect(e.e_exact >= e.ceil_term - cap && e.e_exact <= e.ceil_term + cap,
                    [&] { return name + " E=" + to_string(e.e_exact); });
      finite.expect(b.c_combined > 0 && b.c_zdelta > 0, [&] { return name; });
      residuals.push_back(abs(e.residual));
      zconst.push_back(b.c_zdelta);
    }
    const auto qm = "q=" + std::to_string(key.first) + " m=" + std::to_string(key.second);
    residual_growth.expect(bounded_growth(residuals, factor), [&] { return qm; });
    zgrowth.expect(bounded_growth(zconst, factor), [&] { return qm; });
  }
  return {"bounds",
          {std::move(rueppel).result(), std::move(residual).result(), std::move(residual_growth).result(),
           std::move(window).result(), std::move(finite).result(), std::move(zgrowth).result()}};
}

inline std::string point_string_of(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.parts.size(); ++i) s += (i ? "," : "") + std::to_string(p.parts[i]);
  return s + ")";
}

inline SuiteReport suite_polytope(const VerifyOptions&) {
  Check chain("rho_H <= M_H <= (H+1)^m"), total("sum_H rho_H = |P(m,L)|"), parity("rho_H = 0 off parity"),
      box("lattice points inside [L/m - H, L/m + H]^m"), slice("vertices on the slice hyperplane"),
      fmax("functional max (m-1)L attained uniquely at x^m");
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::int64_t L = 0; L <= 25; ++L) {
      const auto mm = static_cast<std::int64_t>(m);
      const std::int64_t top = (mm - 1) * L;
      const auto size = static_cast<std::int64_t>(enumerate_partitions(m, L).size());
      std::int64_t sum = 0;
      auto where = [&](std::int64_t H) {
        return "m=" + std::to_string(m) + " L=" + std::to_string(L) + " H=" + std::to_string(H);
      };
      for (std::int64_t H = 0; H <= top; ++H) {
        const std::int64_t r = rho(m, L, H);
        const std::int64_t M = count_lattice_points(m, L, H);
        sum += r;
        chain.expect(r <= M && BigInt(M) <= ipow(static_cast<std::uint64_t>(H + 1), m), [&] {
          return where(H) + " rho=" + std::to_string(r) + " M=" + std::to_string(M);
        });
        if ((top - H) % 2 != 0) parity.expect(r == 0, [&] { return where(H) + " rho=" + std::to_string(r); });
        const Interval b = coordinate_box(m, L, H);
        for (const auto& p : lattice_points(m, L, H)) {
          bool inside = true;
          for (auto v : p.parts) inside = inside && b.contains(Rational(v));
          box.expect(inside, [&] { return where(H) + " point=" + point_string_of(p); });
        }
        if (L >= 1) {
          const auto vs = vertices(m, L, H);
          for (std::size_t nu = 1; nu <= m; ++nu) {
            const Rational want = nu == m ? Rational(top) : Rational(top - H);
            slice.expect(functional(vs.vertices[nu - 1]) == want, [&] { return where(H) + " nu=" + std::to_string(nu); });
          }
        }
      }
      total.expect(sum == size, [&] { return where(-1) + " sum=" + std::to_string(sum); });
      const auto f = functional_max(m, L);
      fmax.expect(f.value == top && f.argmax == simplex_vertex(m, L, m) && f.unique,
                  [&] { return "m=" + std::to_string(m) + " L=" + std::to_string(L); });
    }
  return {"polytope",
          {std::move(chain).result(), std::move(total).result(), std::move(parity).result(), std::move(box).result(),
           std::move(slice).result(), std::move(fmax).result()}};
}

inline SuiteReport suite_identity(const VerifyOptions& o) {
  Check exp_id("E via L-sum equals ceil term plus deviation sum"), sum_id("partition sum equals slice sum");
  for (const auto& [key, tables] : census_grid(o))
    for (const auto& t : tables)
      exp_id.expect(expectation_identity_check(t), [&] { return cell_name(t.q, t.m, t.n); });
  std::mt19937_64 rng(o.seed);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t q = 2 + rng() % 2;
    const std::size_t m = 1 + rng() % 5;
    const auto n = static_cast<std::int64_t>(rng() % 41);
    const auto L = static_cast<std::int64_t>(rng() % (n + 1));
    sum_id.expect(sum_identity_check(q, m, n, L), [&] {
      return "q=" + std::to_string(q) + " m=" + std::to_string(m) + " n=" + std::to_string(n) +
             " L=" + std::to_string(L);
    });
  }
  return {"identity", {std::move(exp_id).result(), std::move(sum_id).result()}};
}

inline std::string symbols_string(const Multisequence& t) {
  std::string s;
  for (std::size_t i = 0; i < t.m(); ++i) {
    if (i) s += "/";
    for (std::size_t j = 0; j < t.n(); ++j) s += (j ? "," : "") + std::to_string(t.at(i, j));
  }
  return s;
}

inline SuiteReport suite_oracle(const VerifyOptions& o) {
  Check exhaustive("fast = oracle, q=2, m<=2, n<=6 exhaustive"), random("fast = oracle, 10^4 random cases"),
      witness("witness generates the multisequence");
  auto compare = [&](Check& c, const Multisequence& t) {
    const JlcResult r = jlc_fast(t);
    const std::size_t L = jlc_oracle(t);
    const auto describe = [&] {
      return "q=" + std::to_string(t.field().q()) + " m=" + std::to_string(t.m()) + " n=" + std::to_string(t.n()) +
             " T=" + symbols_string(t) + " fast=" + std::to_string(r.L) + " oracle=" + std::to_string(L);
    };
    c.expect(r.L == L, describe);
    witness.expect(generates(r.witness, t), describe);
  };
  const FieldSpec f2 = field_make(2);
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t n = 0; n <= 6; ++n) {
      Multisequence t(f2, m, n);
      for (std::uint64_t idx = 0; idx < *state_space(2, m, n); ++idx) {
        decode_index(idx, t);
        compare(exhaustive, t);
      }
    }
  std::vector<FieldSpec> fields{field_make(2), field_make(3), field_make(4), field_make(5)};
  std::mt19937_64 rng(o.seed);
  for (int i = 0; i < 10000; ++i) {
    const FieldSpec& f = fields[rng() % fields.size()];
    const std::size_t m = 1 + rng() % 4;
    const std::size_t n = rng() % 33;
    Multisequence t(f, m, n);
    for (auto& s : t.symbols()) s = static_cast<Element>(rng() % f.q());
    compare(random, t);
  }
  return {"oracle", {std::move(exhaustive).result(), std::move(random).result(), std::move(witness).result()}};
}

}  // namespace detail

inline const std::vector<std::string> kSuiteNames{"lemma2", "bounds", "polytope", "identity", "oracle"};

inline SuiteReport run_suite(std::string_view name, const VerifyOptions& o = {}) {
  if (name == "lemma2") return detail::suite_lemma2(o);
  if (name == "bounds") return detail::suite_bounds(o);
  if (name == "polytope") return detail::suite_polytope(o);
  if (name == "identity") return detail::suite_identity(o);
  if (name == "oracle") return detail::suite_oracle(o);
  throw UnknownSuite("unknown suite '" + std::string(name) + "'");
}

}  // namespace mseq
