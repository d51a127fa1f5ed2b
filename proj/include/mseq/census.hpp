#pragma once

// Exhaustive census of joint linear complexity over all q^(nm)
// multisequences, exact expectation and deviation views, bound fitting, and
// a seeded Monte Carlo estimator.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mseq/errors.hpp"
#include "mseq/exact.hpp"
#include "mseq/field.hpp"
#include "mseq/lfsr.hpp"

namespace mseq {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

struct DistributionTable {
  int q = 2;
  std::size_t m = 1;
  std::size_t n = 0;
  std::vector<BigInt> counts;  // counts[L], L = 0..n

  BigInt total() const {
    BigInt s = 0;
    for (const auto& c : counts) s += c;
    return s;
  }
  friend bool operator==(const DistributionTable&, const DistributionTable&) = default;
};

struct DeviationTable {
  int q = 2;
  std::size_t m = 1;
  std::size_t n = 0;
  std::int64_t center = 0;
  std::map<std::int64_t, BigInt> zcounts;  // every delta in [-center, n - center]
  friend bool operator==(const DeviationTable&, const DeviationTable&) = default;
};

struct ExpectationRecord {
  int q = 2;
  std::size_t m = 1;
  std::size_t n = 0;
  Rational e_exact;
  std::int64_t ceil_term = 0;
  Rational residual;
  friend bool operator==(const ExpectationRecord&, const ExpectationRecord&) = default;
};

struct BoundFitReport {
  int q = 2;
  std::size_t m = 1;
  std::size_t n = 0;
  bool c_lemma2_ok = false;
  Rational c_combined;
  Rational c_zdelta;
  friend bool operator==(const BoundFitReport&, const BoundFitReport&) = default;
};

struct MCEstimate {
  int q = 2;
  std::size_t m = 1;
  std::size_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_error = 0.0;
  friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

/// ceil(mn / (m+1)), the centre of the complexity distribution.
inline std::int64_t complexity_center(std::size_t m, std::size_t n) {
  return ceil_div(static_cast<std::int64_t>(m * n), static_cast<std::int64_t>(m + 1));
}

/// q^(nm) when it fits in 64 bits.
inline std::optional<std::uint64_t> state_space(int q, std::size_t m, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < m * n; ++k) {
    if (total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(q)) return std::nullopt;
    total *= static_cast<std::uint64_t>(q);
  }
  return total;
}

/// Writes the multisequence with lexicographic index `index` into t: the nm
/// symbols are taken row-major, the last symbol least significant.
inline void decode_index(std::uint64_t index, Multisequence& t) {
  const auto q = static_cast<std::uint64_t>(t.field().q());
  auto sym = t.symbols();
  for (std::size_t k = sym.size(); k-- > 0;) {
    sym[k] = static_cast<Element>(index % q);
    index /= q;
  }
}

/// Per-L counts over indices [begin, end).
inline std::vector<std::uint64_t> enumerate_range(const FieldSpec& f, std::size_t m, std::size_t n,
                                                  std::uint64_t begin, std::uint64_t end) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  if (begin >= end) return counts;
  Multisequence t(f, m, n);
  decode_index(begin, t);
  auto sym = t.symbols();
  const auto top = static_cast<Element>(f.q() - 1);
  JlcSolver solver;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    ++counts[solver.complexity(t)];
    for (std::size_t k = sym.size(); k-- > 0;) {
      if (sym[k] != top) {
        ++sym[k];
        break;
      }
      sym[k] = 0;
    }
  }
  return counts;
}

struct CensusOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
};

/// Exact N_n^(m)(L) for L = 0..n. Work is split into fixed index chunks that
/// are merged in order, so the result does not depend on `jobs`.
inline DistributionTable enumerate_distribution(const FieldSpec& f, std::size_t m, std::size_t n,
                                                const CensusOptions& opts = {}) {
  const auto space = state_space(f.q(), m, n);
  if (!space || *space > opts.budget)
    throw BudgetExceeded("q^(nm) for q=" + std::to_string(f.q()) + " m=" + std::to_string(m) +
                         " n=" + std::to_string(n) + " exceeds budget " + std::to_string(opts.budget));
  const std::uint64_t total = *space;
  const unsigned jobs = std::max(1u, opts.jobs);
  const std::uint64_t chunk_count = std::min<std::uint64_t>(total, 64);
  std::vector<std::vector<std::uint64_t>> partial(chunk_count);
  auto chunk_begin = [&](std::uint64_t c) { return total / chunk_count * c + std::min(c, total % chunk_count); };

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunk_count; c = next++)
      partial[c] = enumerate_range(f, m, n, chunk_begin(c), chunk_begin(c + 1));
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  DistributionTable t{f.q(), m, n, std::vector<BigInt>(n + 1, 0)};
  for (const auto& p : partial)
    for (std::size_t L = 0; L <= n; ++L) t.counts[L] += p[L];
  return t;
}

inline DistributionTable enumerate_distribution(int q, std::size_t m, std::size_t n, const CensusOptions& opts = {}) {
  return enumerate_distribution(field_make(q), m, n, opts);
}

inline ExpectationRecord expectation(const DistributionTable& t) {
  BigInt weighted = 0;
  for (std::size_t L = 0; L < t.counts.size(); ++L) weighted += t.counts[L] * L;
  const Rational e(weighted, ipow(t.q, t.m * t.n));
  const std::int64_t centre = complexity_center(t.m, t.n);
  return {t.q, t.m, t.n, e, centre, e - centre};
}

inline DeviationTable deviation_table(const DistributionTable& t) {
  DeviationTable d{t.q, t.m, t.n, complexity_center(t.m, t.n), {}};
  for (std::size_t L = 0; L < t.counts.size(); ++L) d.zcounts[static_cast<std::int64_t>(L) - d.center] = t.counts[L];
  return d;
}

/// ceil term plus the deviation-weighted mean, compared with the direct
/// L-weighted mean, both exact.
inline bool expectation_identity_check(const DistributionTable& t) {
  const DeviationTable d = deviation_table(t);
  BigInt correction = 0;
  for (const auto& [delta, z] : d.zcounts) correction += z * delta;
  const Rational via_deviation = Rational(d.center) + Rational(correction, ipow(t.q, t.m * t.n));
  return via_deviation == expectation(t).e_exact;
}

/// N(L) <= q^((m+1)L) for every L.
inline bool lemma2_check(const DistributionTable& t) {
  for (std::size_t L = 0; L < t.counts.size(); ++L)
    if (t.counts[L] > ipow(t.q, (t.m + 1) * L)) return false;
  return true;
}

/// Least constants C with N(L) <= C q^(nm - |(m+1)L - mn|) and
/// Z(delta) <= C q^(nm - (m+1)|delta|).
inline BoundFitReport fit_bounds(const DistributionTable& t) {
  BoundFitReport r{t.q, t.m, t.n, lemma2_check(t), Rational(0), Rational(0)};
  const BigInt full = ipow(t.q, t.m * t.n);
  const auto mn = static_cast<std::int64_t>(t.m * t.n);
  const auto m1 = static_cast<std::int64_t>(t.m + 1);
  for (std::size_t L = 0; L < t.counts.size(); ++L) {
    const auto gap = static_cast<std::uint64_t>(std::llabs(m1 * static_cast<std::int64_t>(L) - mn));
    r.c_combined = std::max(r.c_combined, Rational(t.counts[L] * ipow(t.q, gap), full));
  }
  for (const auto& [delta, z] : deviation_table(t).zcounts) {
    const auto gap = static_cast<std::uint64_t>(m1 * std::llabs(delta));
    r.c_zdelta = std::max(r.c_zdelta, Rational(z * ipow(t.q, gap), full));
  }
  return r;
}

/// Uniform multisequence number `index` of the stream keyed by `seed`. Each
/// sample has its own generator, so the stream is independent of scheduling.
inline void draw_sample(std::uint64_t seed, std::uint64_t index, Multisequence& t) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  const auto q = static_cast<std::uint64_t>(t.field().q());
  const std::uint64_t reject_at = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % q;
  for (auto& s : t.symbols()) {
    std::uint64_t v;
    do v = gen();
    while (v >= reject_at);
    s = static_cast<Element>(v % q);
  }
}

inline MCEstimate mc_estimate(const FieldSpec& f, std::size_t m, std::size_t n, std::uint64_t samples,
                              std::uint64_t seed, unsigned jobs = 1) {
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  jobs = std::max(1u, jobs);
  struct Sums {
    std::uint64_t sum = 0;
    std::uint64_t sumsq = 0;
  };
  std::vector<Sums> per_job(jobs);
  auto worker = [&](unsigned j) {
    Multisequence t(f, m, n);
    JlcSolver solver;
    Sums s;
    for (std::uint64_t i = j; i < samples; i += jobs) {
      draw_sample(seed, i, t);
      const std::uint64_t L = solver.complexity(t);
      s.sum += L;
      s.sumsq += L * L;
    }
    per_job[j] = s;
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
  }
  BigInt sum = 0;
  BigInt sumsq = 0;
  for (const auto& s : per_job) {
    sum += s.sum;
    sumsq += s.sumsq;
  }
  const BigInt N = samples;
  const Rational mean(sum, N);
  const Rational variance(N * sumsq - sum * sum, N * (N - 1));
  MCEstimate est{f.q(), m, n, samples, seed};
  est.mean = to_double(mean);
  est.std_error = std::sqrt(to_double(variance) / static_cast<double>(samples));
  return est;
}

}  // namespace mseq
