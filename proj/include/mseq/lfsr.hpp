#pragma once

// Multisequences and their joint linear complexity.
//
// Convention: the joint linear complexity of T is the least L for which one
// normalized connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L satisfies
//   s_j + c_1 s_{j-1} + ... + c_L s_{j-L} = 0,   L <= j <= n-1,
// in every row simultaneously. c_L may be zero.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mseq/errors.hpp"
#include "mseq/field.hpp"

namespace mseq {

/// An m x n array over F_q; row i is the i-th component sequence.
class Multisequence {
 public:
  Multisequence(FieldSpec field, std::size_t m, std::size_t n)
      : field_(std::move(field)), m_(m), n_(n), data_(m * n, 0) {
    if (m == 0) throw std::invalid_argument("multisequence needs at least one row");
  }

  /// Validates every symbol; throws FieldError naming the first bad one.
  Multisequence(FieldSpec field, const std::vector<std::vector<int>>& rows)
      : field_(std::move(field)), m_(rows.size()), n_(rows.empty() ? 0 : rows.front().size()) {
    if (m_ == 0) throw std::invalid_argument("multisequence needs at least one row");
    data_.reserve(m_ * n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (rows[i].size() != n_) throw std::invalid_argument("ragged multisequence rows");
      for (std::size_t j = 0; j < n_; ++j) {
        const int v = rows[i][j];
        if (!field_.contains(v))
          throw FieldError("symbol " + std::to_string(v) + " at row " + std::to_string(i + 1) + ", position " +
                               std::to_string(j + 1) + " is outside [0, " + std::to_string(field_.q()) + ")",
                           i + 1, j + 1);
        data_.push_back(static_cast<Element>(v));
      }
    }
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }

  Element at(std::size_t row, std::size_t j) const { return data_[row * n_ + j]; }
  void set(std::size_t row, std::size_t j, Element v) { data_[row * n_ + j] = v; }

  std::span<const Element> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<Element> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

  /// Row-major symbol storage (the census enumeration order).
  std::span<const Element> symbols() const noexcept { return data_; }
  std::span<Element> symbols() noexcept { return data_; }

  /// First k columns of every row.
  Multisequence prefix(std::size_t k) const {
    Multisequence out(field_, m_, k);
    for (std::size_t i = 0; i < m_; ++i) std::copy_n(row(i).begin(), k, out.row(i).begin());
    return out;
  }

  friend bool operator==(const Multisequence& a, const Multisequence& b) {
    return a.field_ == b.field_ && a.m_ == b.m_ && a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  FieldSpec field_;
  std::size_t m_;
  std::size_t n_;
  std::vector<Element> data_;
};

/// C(x) = 1 + c_1 x + ... + c_L x^L, stored as (c_1, ..., c_L).
struct ConnectionPoly {
  std::vector<Element> coeffs;

  std::size_t degree_bound() const noexcept { return coeffs.size(); }
  friend bool operator==(const ConnectionPoly&, const ConnectionPoly&) = default;
};

/// values[k-1] is the joint linear complexity of the length-k prefix.
struct ComplexityProfile {
  std::vector<std::size_t> values;
  friend bool operator==(const ComplexityProfile&, const ComplexityProfile&) = default;
};

struct JlcResult {
  std::size_t L = 0;
  ConnectionPoly witness;
};

inline bool generates(const ConnectionPoly& c, const Multisequence& t) {
  const std::size_t L = c.degree_bound();
  if (L > t.n()) throw std::invalid_argument("connection polynomial longer than the sequence");
  const FieldSpec& f = t.field();
  for (std::size_t i = 0; i < t.m(); ++i) {
    auto s = t.row(i);
    for (std::size_t j = L; j < t.n(); ++j) {
      Element acc = s[j];
      for (std::size_t k = 1; k <= L; ++k) acc = f.add(acc, f.mul(c.coeffs[k - 1], s[j - k]));
      if (acc != 0) return false;
    }
  }
  return true;
}

namespace detail {

/// Gaussian elimination on an augmented matrix (rows of width unknowns+1).
/// Returns one solution, or nullopt when inconsistent.
inline std::optional<std::vector<Element>> solve_augmented(const FieldSpec& f, std::vector<std::vector<Element>> a,
                                                           std::size_t unknowns) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < unknowns && r < a.size(); ++col) {
    std::size_t sel = r;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[r], a[sel]);
    const Element scale = f.inv(a[r][col]);
    for (auto& v : a[r]) v = f.mul(v, scale);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][col] == 0) continue;
      const Element factor = a[i][col];
      for (std::size_t k = col; k <= unknowns; ++k) a[i][k] = f.sub(a[i][k], f.mul(factor, a[r][k]));
    }
    pivot_cols.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < a.size(); ++i)
    if (a[i][unknowns] != 0) return std::nullopt;
  std::vector<Element> x(unknowns, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_cols[i]] = a[i][unknowns];
  return x;
}

}  // namespace detail

/// Connection polynomial of degree bound exactly L generating t, if any,
/// found by Gaussian elimination on the recurrence equations.
inline std::optional<ConnectionPoly> solve_connection(const Multisequence& t, std::size_t L) {
  const FieldSpec& f = t.field();
  std::vector<std::vector<Element>> system;
  for (std::size_t i = 0; i < t.m(); ++i) {
    auto s = t.row(i);
    for (std::size_t j = L; j < t.n(); ++j) {
      std::vector<Element> eq(L + 1);
      for (std::size_t k = 1; k <= L; ++k) eq[k - 1] = s[j - k];
      eq[L] = f.neg(s[j]);
      system.push_back(std::move(eq));
    }
  }
  auto sol = detail::solve_augmented(f, std::move(system), L);
  if (!sol) return std::nullopt;
  return ConnectionPoly{std::move(*sol)};
}

/// Reference complexity: tries L = 0, 1, ... and returns the first solvable one.
inline std::size_t jlc_oracle(const Multisequence& t) {
  for (std::size_t L = 0; L < t.n(); ++L)
    if (solve_connection(t, L)) return L;
  return t.n();
}

/// Fast synthesis by weak Popov reduction.
///
/// With A_i(x) = sum_j s_j^(i) x^(n-1-j), a monic f of degree L is the
/// characteristic polynomial of a joint LFSR of length L iff
/// deg(f A_i mod x^n) < deg f for every i. The F[x]-module of vectors
/// (f, f A_1 mod x^n, ..., f A_m mod x^n) is generated by the rows
/// (1, A_1, ..., A_m) and x^n e_i. Under the shift (0, 1, ..., 1) with the
/// leftmost pivot convention such vectors are exactly those with pivot 0,
/// and in a weak Popov basis the pivot-0 row has the least degree among
/// them. The solver keeps its buffers between calls.
class JlcSolver {
 public:
  JlcResult solve(const Multisequence& t) {
    setup(t);
    reduce();
    return extract();
  }

  /// Complexity only, skipping witness construction.
  std::size_t complexity(const Multisequence& t) {
    setup(t);
    reduce();
    return static_cast<std::size_t>(degree_[pivot_row(0) * cols_ + 0]);
  }

 private:
  static constexpr int kZero = -1;

  Element& coef(std::size_t r, std::size_t c, std::size_t k) { return buf_[(r * cols_ + c) * cap_ + k]; }

  void setup(const Multisequence& t) {
    field_ = &t.field();
    n_ = t.n();
    cols_ = t.m() + 1;
    cap_ = n_ + 2;
    buf_.assign(cols_ * cols_ * cap_, 0);
    degree_.assign(cols_ * cols_, kZero);
    coef(0, 0, 0) = 1;
    degree_[0] = 0;
    for (std::size_t i = 0; i < t.m(); ++i) {
      auto s = t.row(i);
      int deg = kZero;
      for (std::size_t j = 0; j < n_; ++j) {
        coef(0, i + 1, n_ - 1 - j) = s[j];
        if (s[j] != 0) deg = std::max(deg, static_cast<int>(n_ - 1 - j));
      }
      degree_[i + 1] = deg;
      coef(i + 1, i + 1, n_) = 1;
      degree_[(i + 1) * cols_ + i + 1] = static_cast<int>(n_);
    }
    rdeg_.assign(cols_, 0);
    pivot_.assign(cols_, 0);
    for (std::size_t r = 0; r < cols_; ++r) update_row(r);
  }

  int shifted(std::size_t r, std::size_t c) const {
    const int d = degree_[r * cols_ + c];
    return d == kZero ? kZero : d + (c == 0 ? 0 : 1);
  }

  void update_row(std::size_t r) {
    int best = kZero;
    std::size_t piv = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const int d = shifted(r, c);
      if (d > best) {
        best = d;
        piv = c;
      }
    }
    rdeg_[r] = best;
    pivot_[r] = piv;
  }

  // row a -= (lc_a / lc_b) x^shift row b
  void eliminate(std::size_t a, std::size_t b) {
    const std::size_t c = pivot_[a];
    const int shift = degree_[a * cols_ + c] - degree_[b * cols_ + c];
    const Element factor =
        field_->div(coef(a, c, degree_[a * cols_ + c]), coef(b, c, degree_[b * cols_ + c]));
    for (std::size_t col = 0; col < cols_; ++col) {
      const int db = degree_[b * cols_ + col];
      if (db == kZero) continue;
      for (int k = 0; k <= db; ++k) {
        const Element v = coef(b, col, k);
        if (v == 0) continue;
        Element& dst = coef(a, col, k + shift);
        dst = field_->sub(dst, field_->mul(factor, v));
      }
      int& da = degree_[a * cols_ + col];
      da = std::max(da, db + shift);
      while (da >= 0 && coef(a, col, da) == 0) --da;
    }
    update_row(a);
  }

  void reduce() {
    for (;;) {
      bool clash = false;
      for (std::size_t r1 = 0; r1 < cols_ && !clash; ++r1) {
        for (std::size_t r2 = r1 + 1; r2 < cols_; ++r2) {
          if (pivot_[r1] != pivot_[r2]) continue;
          if (rdeg_[r1] >= rdeg_[r2])
            eliminate(r1, r2);
          else
            eliminate(r2, r1);
          clash = true;
          break;
        }
      }
      if (!clash) return;
    }
  }

  std::size_t pivot_row(std::size_t c) const {
    for (std::size_t r = 0; r < cols_; ++r)
      if (pivot_[r] == c) return r;
    return cols_;  // unreachable: the basis is nonsingular
  }

  JlcResult extract() {
    const std::size_t r = pivot_row(0);
    const int L = degree_[r * cols_ + 0];
    const Element lead_inv = field_->inv(coef(r, 0, L));
    JlcResult res;
    res.L = static_cast<std::size_t>(L);
    res.witness.coeffs.resize(res.L);
    for (int k = 1; k <= L; ++k) res.witness.coeffs[k - 1] = field_->mul(lead_inv, coef(r, 0, L - k));
    return res;
  }

  const FieldSpec* field_ = nullptr;
  std::size_t n_ = 0;
  std::size_t cols_ = 0;
  std::size_t cap_ = 0;
  std::vector<Element> buf_;
  std::vector<int> degree_;
  std::vector<int> rdeg_;
  std::vector<std::size_t> pivot_;
};

inline JlcResult jlc_fast(const Multisequence& t) {
  JlcSolver solver;
  return solver.solve(t);
}

inline ComplexityProfile jlc_profile(const Multisequence& t) {
  JlcSolver solver;
  ComplexityProfile p;
  p.values.reserve(t.n());
  for (std::size_t k = 1; k <= t.n(); ++k) p.values.push_back(solver.complexity(t.prefix(k)));
  return p;
}

}  // namespace mseq
