#include "mseq/census.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <tuple>
#include <vector>

namespace mseq {
namespace {

std::vector<BigInt> big(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

/// Independent route: decode each index and run the Gaussian oracle.
std::vector<BigInt> oracle_counts(int q, std::size_t m, std::size_t n) {
  const FieldSpec f = field_make(q);
  std::vector<BigInt> counts(n + 1, 0);
  const std::uint64_t total = *state_space(q, m, n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Multisequence t(f, m, n);
    std::uint64_t v = idx;
    auto sym = t.symbols();
    for (std::size_t k = sym.size(); k-- > 0;) {
      sym[k] = static_cast<Element>(v % q);
      v /= q;
    }
    ++counts[jlc_oracle(t)];
  }
  return counts;
}

TEST(EnumerateDistribution, SmallExamples) {
  EXPECT_EQ(enumerate_distribution(2, 1, 2).counts, big({1, 2, 1}));
  EXPECT_EQ(enumerate_distribution(2, 2, 1).counts, big({1, 3}));
  EXPECT_EQ(enumerate_distribution(3, 2, 0).counts, big({1}));
}

TEST(EnumerateDistribution, MatchesOracleCensus) {
  struct Cell {
    int q;
    std::size_t m, n;
  };
  for (Cell c : {Cell{2, 1, 8}, Cell{2, 2, 5}, Cell{2, 3, 4}, Cell{3, 1, 5}, Cell{3, 2, 3}, Cell{4, 1, 4}}) {
    const DistributionTable t = enumerate_distribution(c.q, c.m, c.n);
    EXPECT_EQ(t.counts, oracle_counts(c.q, c.m, c.n)) << c.q << " " << c.m << " " << c.n;
    EXPECT_EQ(t.counts[0], 1);
    EXPECT_EQ(t.total(), ipow(c.q, c.m * c.n));
  }
}

TEST(EnumerateDistribution, BudgetExceeded) {
  EXPECT_THROW(enumerate_distribution(2, 3, 20), BudgetExceeded);
  EXPECT_THROW(enumerate_distribution(2, 1, 10, {.budget = 512}), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_distribution(2, 1, 9, {.budget = 512}));
  EXPECT_THROW(enumerate_distribution(2, 8, 10), BudgetExceeded);  // 2^80 overflows 64 bits
}

TEST(EnumerateDistribution, SplitRangesMerge) {
  const FieldSpec f = field_make(3);
  const std::uint64_t total = *state_space(3, 2, 4);
  const auto whole = enumerate_range(f, 2, 4, 0, total);
  for (std::uint64_t cut : {std::uint64_t{0}, std::uint64_t{1}, total / 3, total - 1, total}) {
    auto a = enumerate_range(f, 2, 4, 0, cut);
    const auto b = enumerate_range(f, 2, 4, cut, total);
    for (std::size_t L = 0; L < a.size(); ++L) a[L] += b[L];
    EXPECT_EQ(a, whole) << "cut=" << cut;
  }
}

TEST(EnumerateDistribution, IndependentOfJobs) {
  const auto one = enumerate_distribution(2, 2, 7, {.jobs = 1});
  const auto many = enumerate_distribution(2, 2, 7, {.jobs = 8});
  EXPECT_EQ(one, many);
}

TEST(Expectation, Examples) {
  EXPECT_EQ(expectation(enumerate_distribution(2, 1, 1)).e_exact, Rational(1, 2));
  EXPECT_EQ(expectation(enumerate_distribution(2, 1, 2)).e_exact, Rational(1));

  DistributionTable concentrated{2, 1, 3, big({8, 0, 0, 0})};
  const auto r = expectation(concentrated);
  EXPECT_EQ(r.e_exact, 0);
  EXPECT_EQ(r.ceil_term, 2);
  EXPECT_EQ(r.residual, -2);
}

TEST(DeviationTable, Examples) {
  auto d = deviation_table(enumerate_distribution(2, 1, 2));
  EXPECT_EQ(d.center, 1);
  EXPECT_EQ(d.zcounts, (std::map<std::int64_t, BigInt>{{-1, 1}, {0, 2}, {1, 1}}));

  d = deviation_table(enumerate_distribution(2, 2, 1));
  EXPECT_EQ(d.center, 1);
  EXPECT_EQ(d.zcounts, (std::map<std::int64_t, BigInt>{{-1, 1}, {0, 3}}));

  d = deviation_table(DistributionTable{2, 1, 3, big({8, 0, 0, 0})});
  EXPECT_EQ(d.zcounts.at(-2), 8);
  BigInt rest = 0;
  for (const auto& [delta, z] : d.zcounts)
    if (delta != -2) rest += z;
  EXPECT_EQ(rest, 0);
}

TEST(ExpectationIdentity, Examples) {
  EXPECT_TRUE(expectation_identity_check(enumerate_distribution(2, 1, 2)));
  EXPECT_TRUE(expectation_identity_check(enumerate_distribution(2, 2, 1)));
  EXPECT_EQ(expectation(enumerate_distribution(2, 2, 1)).e_exact, Rational(3, 4));
  // all mass at the centre: correction vanishes
  DistributionTable centred{2, 1, 3, big({0, 0, 8, 0})};
  EXPECT_TRUE(expectation_identity_check(centred));
  EXPECT_EQ(expectation(centred).residual, 0);
}

TEST(Lemma2, Examples) {
  EXPECT_TRUE(lemma2_check(enumerate_distribution(2, 1, 2)));
  EXPECT_FALSE(lemma2_check(DistributionTable{2, 1, 2, big({1, 5, 0})}));  // 5 > 2^2
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_TRUE(lemma2_check(enumerate_distribution(2, 2, n)));
}

TEST(FitBounds, Examples) {
  const auto r = fit_bounds(enumerate_distribution(2, 1, 2));
  EXPECT_TRUE(r.c_lemma2_ok);
  EXPECT_EQ(r.c_combined, 1);
  EXPECT_EQ(r.c_zdelta, 1);

  // only L = 0 populated: the single term q^(nm) * q^(nm) / q^(nm)
  const auto z = fit_bounds(DistributionTable{2, 1, 2, big({4, 0, 0})});
  EXPECT_EQ(z.c_combined, 4 * 4 / Rational(4));
}

TEST(FitBounds, ConstantsAreAttained) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto t = enumerate_distribution(2, 2, n);
    const auto r = fit_bounds(t);
    const BigInt full = ipow(2, 2 * n);
    bool hit = false;
    for (std::size_t L = 0; L <= n; ++L) {
      const auto gap = static_cast<unsigned>(std::llabs(3 * static_cast<long long>(L) - 2 * static_cast<long long>(n)));
      const Rational bound = r.c_combined * Rational(full, ipow(2, gap));
      EXPECT_LE(Rational(t.counts[L]), bound);
      hit = hit || Rational(t.counts[L]) == bound;
    }
    EXPECT_TRUE(hit);
  }
}

TEST(Expectation, NondecreasingInLengthOverGrid) {
  for (auto [q, m, n_max] : {std::tuple{2, 1, 12}, std::tuple{2, 2, 7}, std::tuple{3, 1, 7}, std::tuple{3, 2, 4}}) {
    Rational prev = -1;
    for (std::size_t n = 0; n <= static_cast<std::size_t>(n_max); ++n) {
      const auto t = enumerate_distribution(q, m, n);
      const Rational e = expectation(t).e_exact;
      EXPECT_GE(e, prev) << q << " " << m << " " << n;
      EXPECT_TRUE(expectation_identity_check(t));
      prev = e;
    }
  }
}

TEST(MonteCarlo, EmptyPrefix) {
  const auto est = mc_estimate(field_make(2), 2, 0, 100, 1);
  EXPECT_EQ(est.mean, 0.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(MonteCarlo, RejectsTooFewSamples) { EXPECT_THROW(mc_estimate(field_make(2), 1, 3, 1, 1), std::invalid_argument); }

TEST(MonteCarlo, DeterministicAndJobIndependent) {
  const FieldSpec f = field_make(3);
  const auto a = mc_estimate(f, 2, 6, 2000, 99, 1);
  const auto b = mc_estimate(f, 2, 6, 2000, 99, 1);
  const auto c = mc_estimate(f, 2, 6, 2000, 99, 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a.mean, mc_estimate(f, 2, 6, 2000, 100, 1).mean);
}

TEST(MonteCarlo, CalibratedAgainstExactCensus) {
  const Rational exact = expectation(enumerate_distribution(2, 2, 9)).e_exact;
  const auto est = mc_estimate(field_make(2), 2, 9, 100000, 42);
  EXPECT_LE(std::abs(est.mean - to_double(exact)), 3 * est.std_error);
}

}  // namespace
}  // namespace mseq
