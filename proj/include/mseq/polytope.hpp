#pragma once

// Partitions of L into at most m parts and the lattice-point counts of the
// partition simplex and its slices.
//
//   Omega    = { x_1 >= ... >= x_m >= 0, sum x = L }
//   Omega_H  = Omega with 2 sum (k-1) x_k >= (m-1)L - H
//   Omega_H* = Omega_H without x_m >= 0
//
// All arithmetic is exact.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mseq/errors.hpp"
#include "mseq/exact.hpp"

namespace mseq {

/// Nonincreasing m-tuple of nonnegative integers.
struct Partition {
  std::vector<std::int64_t> parts;

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto v : parts) s += v;
    return s;
  }
  friend bool operator==(const Partition&, const Partition&) = default;
};

using RationalPoint = std::vector<Rational>;

struct VertexSet {
  std::size_t m = 0;
  std::int64_t L = 0;
  std::int64_t H = 0;
  std::vector<RationalPoint> vertices;  // vertices[nu-1] = x(H, nu)
};

struct FunctionalMax {
  std::int64_t value = 0;
  RationalPoint argmax;
  bool unique = true;
};

/// Closed interval with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

namespace detail {

inline void validate_slice(std::size_t m, std::int64_t L, std::int64_t H) {
  if (m < 1 || L < 0) throw std::invalid_argument("need m >= 1 and L >= 0");
  if (H < 0 || H > static_cast<std::int64_t>(m - 1) * L) throw std::invalid_argument("need 0 <= H <= (m-1)L");
}

inline void for_each_partition(std::size_t m, std::int64_t L, const std::function<void(const Partition&)>& visit) {
  Partition p{std::vector<std::int64_t>(m, 0)};
  // place part k given the remaining sum and the cap from part k-1
  std::function<void(std::size_t, std::int64_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t rest,
                                                                           std::int64_t cap) {
    const auto slots = static_cast<std::int64_t>(m - k);
    if (k + 1 == m) {
      p.parts[k] = rest;
      visit(p);
      return;
    }
    const std::int64_t lowest = ceil_div(rest, slots);
    for (std::int64_t v = std::min(cap, rest); v >= lowest; --v) {
      p.parts[k] = v;
      rec(k + 1, rest - v, v);
    }
  };
  if (m == 0) return;
  rec(0, L, L);
}

}  // namespace detail

/// P(m, L) in lexicographically descending order.
inline std::vector<Partition> enumerate_partitions(std::size_t m, std::int64_t L) {
  if (m < 1 || L < 0) throw std::invalid_argument("need m >= 1 and L >= 0");
  std::vector<Partition> out;
  detail::for_each_partition(m, L, [&](const Partition& p) { out.push_back(p); });
  return out;
}

/// 2 sum_k (k-1) i_k.
inline std::int64_t functional(const Partition& I) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < I.parts.size(); ++k) s += static_cast<std::int64_t>(k) * I.parts[k];
  return 2 * s;
}

inline Rational functional(const RationalPoint& x) {
  Rational s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += Rational(static_cast<std::int64_t>(k)) * x[k];
  return 2 * s;
}

/// rho_H: partitions on the slice functional = (m-1)L - H.
inline std::int64_t rho(std::size_t m, std::int64_t L, std::int64_t H) {
  detail::validate_slice(m, L, H);
  const std::int64_t target = static_cast<std::int64_t>(m - 1) * L - H;
  std::int64_t count = 0;
  detail::for_each_partition(m, L, [&](const Partition& p) { count += functional(p) == target; });
  return count;
}

/// M_H: integer points of Omega_H.
inline std::int64_t count_lattice_points(std::size_t m, std::int64_t L, std::int64_t H) {
  detail::validate_slice(m, L, H);
  const std::int64_t floor_value = static_cast<std::int64_t>(m - 1) * L - H;
  std::int64_t count = 0;
  detail::for_each_partition(m, L, [&](const Partition& p) { count += functional(p) >= floor_value; });
  return count;
}

/// The integer points of Omega_H themselves.
inline std::vector<Partition> lattice_points(std::size_t m, std::int64_t L, std::int64_t H) {
  detail::validate_slice(m, L, H);
  const std::int64_t floor_value = static_cast<std::int64_t>(m - 1) * L - H;
  std::vector<Partition> out;
  detail::for_each_partition(m, L, [&](const Partition& p) {
    if (functional(p) >= floor_value) out.push_back(p);
  });
  return out;
}

/// rho_H <= M_H <= (H+1)^m.
inline bool lemma4_check(std::size_t m, std::int64_t L, std::int64_t H) {
  const std::int64_t r = rho(m, L, H);
  const std::int64_t M = count_lattice_points(m, L, H);
  return r <= M && BigInt(M) <= ipow(static_cast<std::uint64_t>(H + 1), m);
}

/// x^nu: first nu coordinates L/nu, the rest zero.
inline RationalPoint simplex_vertex(std::size_t m, std::int64_t L, std::size_t nu) {
  RationalPoint x(m, Rational(0));
  for (std::size_t j = 0; j < nu; ++j) x[j] = Rational(L, static_cast<std::int64_t>(nu));
  return x;
}

/// Vertices x(H, nu) = (1 - t) x^m + t x^nu, t = H / ((m - nu) L), of Omega_H*.
inline VertexSet vertices(std::size_t m, std::int64_t L, std::int64_t H) {
  if (L == 0) throw DegenerateSimplex("Omega_H* degenerates to a point when L = 0");
  detail::validate_slice(m, L, H);
  VertexSet vs{m, L, H, {}};
  const RationalPoint centre = simplex_vertex(m, L, m);
  for (std::size_t nu = 1; nu < m; ++nu) {
    const Rational t(H, static_cast<std::int64_t>(m - nu) * L);
    const RationalPoint far = simplex_vertex(m, L, nu);
    RationalPoint x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = (1 - t) * centre[j] + t * far[j];
    vs.vertices.push_back(std::move(x));
  }
  vs.vertices.push_back(centre);
  return vs;
}

/// Max of 2 sum (k-1) x_k over Omega, attained at x^m; uniqueness is checked
/// against the other simplex vertices.
inline FunctionalMax functional_max(std::size_t m, std::int64_t L) {
  if (m < 1 || L < 0) throw std::invalid_argument("need m >= 1 and L >= 0");
  FunctionalMax r;
  r.value = static_cast<std::int64_t>(m - 1) * L;
  r.argmax = simplex_vertex(m, L, m);
  if (L == 0) return r;
  for (std::size_t nu = 1; nu < m; ++nu)
    if (functional(simplex_vertex(m, L, nu)) >= r.value) r.unique = false;
  if (functional(r.argmax) != r.value) r.unique = false;
  return r;
}

/// Per-coordinate box holding Omega_H*: every vertex deviates from L/m by at
/// most H/(m nu) or H/(m (m - nu)), hence by at most H.
inline Interval coordinate_box(std::size_t m, std::int64_t L, std::int64_t H) {
  const Rational mid(L, static_cast<std::int64_t>(m));
  return {mid - H, mid + H};
}

/// sum over P(m,L) of q^(functional + 2m(n-L)) against
/// sum over H of rho_H q^(2mn - (m+1)L - H), both exact.
inline bool sum_identity_check(std::uint64_t q, std::size_t m, std::int64_t n, std::int64_t L) {
  if (q < 2 || m < 1 || L < 0 || n < L) throw std::invalid_argument("need q >= 2, m >= 1, n >= L >= 0");
  const auto mm = static_cast<std::int64_t>(m);
  BigInt by_partition = 0;
  detail::for_each_partition(m, L, [&](const Partition& p) {
    by_partition += ipow(q, static_cast<std::uint64_t>(functional(p) + 2 * mm * (n - L)));
  });
  BigInt by_slice = 0;
  for (std::int64_t H = 0; H <= (mm - 1) * L; ++H) {
    const std::int64_t r = rho(m, L, H);
    if (r != 0) by_slice += r * ipow(q, static_cast<std::uint64_t>(2 * mm * n - (mm + 1) * L - H));
  }
  return by_partition == by_slice;
}

struct SeriesBracket {
  Rational lower;
  Rational upper;
  std::int64_t terms = 0;  // partial-sum length
  Rational width() const { return upper - lower; }
};

/// Brackets S(q, m) = sum_{H >= 0} (H+1)^m / q^H.
///
/// For H >= N the term ratio ((H+2)/(H+1))^m / q is at most
/// r_N = ((N+2)/(N+1))^m / q, so once r_N < 1 the tail from N is at most
/// a_N / (1 - r_N).
inline SeriesBracket series_c1(std::uint64_t q, std::size_t m, const Rational& eps) {
  if (q < 2 || m < 1 || eps <= 0) throw std::invalid_argument("need q >= 2, m >= 1, eps > 0");
  Rational partial = 0;
  for (std::int64_t N = 0;; ++N) {
    const Rational term(ipow(static_cast<std::uint64_t>(N + 1), m), ipow(q, static_cast<std::uint64_t>(N)));
    const Rational ratio = Rational(ipow(static_cast<std::uint64_t>(N + 2), m), ipow(static_cast<std::uint64_t>(N + 1), m) * q);
    if (ratio < 1) {
      const Rational tail = term / (1 - ratio);
      if (tail <= eps) return {partial, partial + tail, N};
    }
    partial += term;
  }
}

inline SeriesBracket series_c1(std::uint64_t q, std::size_t m, double eps) {
  return series_c1(q, m, Rational(eps));
}

}  // namespace mseq
