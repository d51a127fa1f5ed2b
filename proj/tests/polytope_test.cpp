#include "mseq/polytope.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace mseq {
namespace {

Partition P(std::initializer_list<std::int64_t> v) { return Partition{{v.begin(), v.end()}}; }

TEST(Partitions, Examples) {
  EXPECT_EQ(enumerate_partitions(2, 3), (std::vector<Partition>{P({3, 0}), P({2, 1})}));
  EXPECT_EQ(enumerate_partitions(1, 5), (std::vector<Partition>{P({5})}));
  EXPECT_EQ(enumerate_partitions(3, 0), (std::vector<Partition>{P({0, 0, 0})}));
}

TEST(Partitions, CompleteSortedAndValid) {
  // brute force over the box [0, L]^m
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::int64_t L = 0; L <= 9; ++L) {
      std::vector<Partition> brute;
      std::vector<std::int64_t> x(m, 0);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == m) {
          std::int64_t s = 0;
          bool ok = true;
          for (std::size_t j = 0; j < m; ++j) {
            s += x[j];
            if (j > 0 && x[j] > x[j - 1]) ok = false;
          }
          if (ok && s == L) brute.push_back(Partition{x});
          return;
        }
        for (std::int64_t v = L; v >= 0; --v) {
          x[k] = v;
          rec(k + 1);
        }
      };
      rec(0);
      EXPECT_EQ(enumerate_partitions(m, L), brute) << "m=" << m << " L=" << L;
    }
}

TEST(Functional, Examples) {
  EXPECT_EQ(functional(P({3, 0})), 0);
  EXPECT_EQ(functional(P({2, 1})), 2);
  EXPECT_EQ(functional(P({2, 2, 2})), 12);
}

TEST(Rho, Examples) {
  EXPECT_EQ(rho(2, 3, 1), 1);
  EXPECT_EQ(rho(2, 3, 2), 0);
  EXPECT_EQ(rho(2, 3, 3), 1);
  EXPECT_THROW(rho(2, 3, 4), std::invalid_argument);
}

TEST(LatticePoints, Examples) {
  EXPECT_EQ(count_lattice_points(2, 3, 1), 1);
  EXPECT_EQ(count_lattice_points(2, 3, 0), 0);
  EXPECT_EQ(count_lattice_points(2, 4, 0), 1);
  EXPECT_EQ(lattice_points(2, 3, 1), (std::vector<Partition>{P({2, 1})}));
}

TEST(Lemma4, Examples) {
  EXPECT_TRUE(lemma4_check(2, 3, 1));
  for (std::size_t m = 1; m <= 5; ++m) {
    EXPECT_EQ(count_lattice_points(m, 6 * static_cast<std::int64_t>(m), 0), 1);
    EXPECT_TRUE(lemma4_check(m, 6 * static_cast<std::int64_t>(m), 0));
  }
  // m=3, L=9, H=2: brute-force scan of the box [0,9]^3
  std::int64_t brute = 0;
  for (int a = 0; a <= 9; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c <= b; ++c)
        if (a + b + c == 9 && 2 * (b + 2 * c) >= 2 * 9 - 2) ++brute;
  EXPECT_EQ(count_lattice_points(3, 9, 2), brute);
  EXPECT_TRUE(lemma4_check(3, 9, 2));
}

TEST(PolytopeGrid, SliceCountsAndParity) {
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::int64_t L = 0; L <= 30; ++L) {
      const auto size = static_cast<std::int64_t>(enumerate_partitions(m, L).size());
      const std::int64_t top = static_cast<std::int64_t>(m - 1) * L;
      std::int64_t sum = 0;
      std::int64_t prev_M = 0;
      for (std::int64_t H = 0; H <= top; ++H) {
        const std::int64_t r = rho(m, L, H);
        const std::int64_t M = count_lattice_points(m, L, H);
        sum += r;
        if ((H - top) % 2 != 0) {
          ASSERT_EQ(r, 0) << m << " " << L << " " << H;
        }
        ASSERT_LE(r, M);
        ASSERT_LE(BigInt(M), ipow(H + 1, m));
        ASSERT_GE(M, prev_M);
        prev_M = M;
      }
      ASSERT_EQ(sum, size);
      ASSERT_EQ(count_lattice_points(m, L, top), size);
    }
}

TEST(PolytopeGrid, LatticePointsStayInCoordinateBox) {
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::int64_t L = 0; L <= 20; ++L)
      for (std::int64_t H = 0; H <= static_cast<std::int64_t>(m - 1) * L; ++H) {
        const Interval box = coordinate_box(m, L, H);
        const Rational mid(L, static_cast<std::int64_t>(m));
        for (const auto& p : lattice_points(m, L, H)) {
          for (auto v : p.parts) ASSERT_TRUE(box.contains(Rational(v)));
          ASSERT_LE(Rational(p.parts.back()), mid);
          ASSERT_GE(Rational(p.parts.front()), mid);
        }
      }
}

TEST(PolytopeGrid, LargestPartCanExceedTheMean) {
  // (2,1) lies in Omega_1 for m=2, L=3, and its first coordinate exceeds L/m,
  // so the box around L/m must extend upward as well as downward.
  const auto pts = lattice_points(2, 3, 1);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_GT(Rational(pts[0].parts[0]), Rational(3, 2));
}

TEST(Vertices, Examples) {
  auto vs = vertices(2, 4, 2);
  EXPECT_EQ(vs.vertices[0], (RationalPoint{3, 1}));
  EXPECT_EQ(vs.vertices[1], (RationalPoint{2, 2}));

  vs = vertices(3, 6, 3);
  EXPECT_EQ(vs.vertices[1], (RationalPoint{Rational(5, 2), Rational(5, 2), 1}));
  EXPECT_EQ(functional(vs.vertices[1]), 9);
  EXPECT_EQ(vs.vertices[2], (RationalPoint{2, 2, 2}));

  vs = vertices(4, 7, 0);
  for (const auto& v : vs.vertices) EXPECT_EQ(v, simplex_vertex(4, 7, 4));

  EXPECT_THROW(vertices(3, 0, 0), DegenerateSimplex);
}

TEST(Vertices, LieOnSliceWithExpectedDeviations) {
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::int64_t L = 1; L <= 12; ++L)
      for (std::int64_t H = 0; H <= static_cast<std::int64_t>(m - 1) * L; ++H) {
        const auto vs = vertices(m, L, H);
        ASSERT_EQ(vs.vertices.size(), m);
        const Rational mid(L, static_cast<std::int64_t>(m));
        const Interval box = coordinate_box(m, L, H);
        const auto mm = static_cast<std::int64_t>(m);
        for (std::size_t nu = 1; nu <= m; ++nu) {
          const RationalPoint& x = vs.vertices[nu - 1];
          Rational sum = 0;
          for (std::size_t j = 0; j < m; ++j) {
            sum += x[j];
            if (j > 0) {
              ASSERT_GE(x[j - 1], x[j]);
            }
            ASSERT_TRUE(box.contains(x[j]));
          }
          ASSERT_EQ(sum, L);
          if (nu == m) {
            ASSERT_EQ(functional(x), (mm - 1) * L);
            continue;
          }
          ASSERT_EQ(functional(x), (mm - 1) * L - H);
          const auto n = static_cast<std::int64_t>(nu);
          for (std::size_t j = 0; j < m; ++j) {
            const Rational dev = abs(x[j] - mid);
            ASSERT_EQ(dev, j < nu ? Rational(H, mm * n) : Rational(H, mm * (mm - n)));
          }
        }
      }
}

TEST(FunctionalMax, Examples) {
  auto r = functional_max(3, 6);
  EXPECT_EQ(r.value, 12);
  EXPECT_EQ(r.argmax, (RationalPoint{2, 2, 2}));
  EXPECT_TRUE(r.unique);

  r = functional_max(1, 9);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.argmax, (RationalPoint{9}));

  r = functional_max(4, 0);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.argmax, (RationalPoint{0, 0, 0, 0}));
}

TEST(SumIdentity, Examples) {
  for (std::int64_t L = 0; L <= 6; ++L) EXPECT_TRUE(sum_identity_check(3, 1, 6, L));
  EXPECT_TRUE(sum_identity_check(2, 2, 5, 3));
  EXPECT_TRUE(sum_identity_check(3, 3, 4, 4));
}

TEST(SumIdentity, TwoRowCaseByHand) {
  // q=2, m=2, n=5, L=3: P(2,3) = {(3,0), (2,1)} with functionals 0 and 2,
  // so the partition side is 2^(0+8) + 2^(2+8).
  // Slices: H=3 holds (3,0), H=1 holds (2,1): 2^(20-9-3) + 2^(20-9-1).
  EXPECT_EQ(rho(2, 3, 3), 1);
  EXPECT_EQ(rho(2, 3, 1), 1);
  EXPECT_TRUE(sum_identity_check(2, 2, 5, 3));
}

TEST(SumIdentity, RandomGrid) {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 100; ++it) {
    const std::uint64_t q = 2 + rng() % 2;
    const std::size_t m = 1 + rng() % 5;
    const std::int64_t n = rng() % 41;
    const std::int64_t L = static_cast<std::int64_t>(rng() % (n + 1));
    ASSERT_TRUE(sum_identity_check(q, m, n, L)) << q << " " << m << " " << n << " " << L;
  }
}

TEST(Series, ClosedForms) {
  const Rational eps(1, 1000000000);
  auto b = series_c1(2, 1, eps);
  EXPECT_LE(b.lower, 4);
  EXPECT_GE(b.upper, 4);
  EXPECT_LE(b.width(), eps);

  b = series_c1(4, 1, eps);
  EXPECT_LE(b.lower, Rational(16, 9));
  EXPECT_GE(b.upper, Rational(16, 9));

  // sum (H+1)^2 x^H = (1+x)/(1-x)^3 = 12 at x = 1/2
  b = series_c1(2, 2, eps);
  EXPECT_LE(b.lower, 12);
  EXPECT_GE(b.upper, 12);
  EXPECT_LE(b.width(), eps);
}

TEST(Series, DirectSummationCrossCheck) {
  for (std::uint64_t q : {2, 3})
    for (std::size_t m = 1; m <= 4; ++m) {
      long double direct = 0;
      for (int H = 0; H < 1000000; ++H) {
        const long double term = std::pow(static_cast<long double>(H + 1), m) * std::pow(1.0L / q, H);
        if (term == 0) break;
        direct += term;
      }
      const auto b = series_c1(q, m, 1e-9);
      EXPECT_LE(b.width(), Rational(1, 1000000000));
      EXPECT_GE(direct, to_double(b.lower) - 1e-9);
      EXPECT_LE(direct, to_double(b.upper) + 1e-9);
    }
}

}  // namespace
}  // namespace mseq
