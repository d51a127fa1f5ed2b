#pragma once

// Table-driven arithmetic in F_q, q = p^e <= 256.
//
// Element encoding: an integer in [0, q) whose base-p digits are the
// coefficients of the residue polynomial, lowest digit = constant term.
// This encoding is part of the seqfile contract.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mseq/errors.hpp"

namespace mseq {

using Element = std::uint8_t;

/// Polynomial over F_p as base-p digits, lowest degree first.
using DigitPoly = std::vector<int>;

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Returns (p, e) with q = p^e, or nullopt.
inline std::optional<std::pair<int, int>> prime_power(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) return std::nullopt;
  return std::pair{p, e};
}

inline int mod_inverse(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

inline void trim(DigitPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of a modulo the monic polynomial d over F_p.
inline DigitPoly poly_rem(DigitPoly a, const DigitPoly& d, int p) {
  trim(a);
  const std::size_t dd = d.size() - 1;
  while (a.size() > dd) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) a[shift + i] = ((a[shift + i] - lead * d[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const DigitPoly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      DigitPoly g(d + 1);
      int c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

/// Built-in moduli, digits lowest degree first.
inline std::optional<DigitPoly> default_modulus(int q) {
  switch (q) {
    case 4: return DigitPoly{1, 1, 1};                    // x^2+x+1
    case 8: return DigitPoly{1, 1, 0, 1};                 // x^3+x+1
    case 16: return DigitPoly{1, 1, 0, 0, 1};             // x^4+x+1
    case 32: return DigitPoly{1, 0, 1, 0, 0, 1};          // x^5+x^2+1
    case 64: return DigitPoly{1, 1, 0, 0, 0, 0, 1};       // x^6+x+1
    case 128: return DigitPoly{1, 1, 0, 0, 0, 0, 0, 1};   // x^7+x+1
    case 256: return DigitPoly{1, 1, 0, 1, 1, 0, 0, 0, 1};  // x^8+x^4+x^3+x+1
    case 9: return DigitPoly{1, 0, 1};                    // x^2+1
    case 27: return DigitPoly{1, 2, 0, 1};                // x^3+2x+1
    case 81: return DigitPoly{2, 0, 0, 2, 1};             // x^4+2x^3+2
    case 243: return DigitPoly{1, 2, 0, 0, 0, 1};         // x^5+2x+1
    case 25: return DigitPoly{2, 4, 1};                   // x^2+4x+2
    case 125: return DigitPoly{3, 3, 0, 1};               // x^3+3x+3
    case 49: return DigitPoly{3, 6, 1};                   // x^2+6x+3
    case 121: return DigitPoly{2, 7, 1};                  // x^2+7x+2
    case 169: return DigitPoly{2, 12, 1};                 // x^2+12x+2
    default: return std::nullopt;
  }
}

struct FieldTables {
  std::vector<Element> add;  // q*q
  std::vector<Element> mul;  // q*q
  std::vector<Element> neg;  // q
  std::vector<Element> inv;  // q, inv[0] unused
};

}  // namespace detail

/// Immutable description of F_q with precomputed operation tables.
/// Copies share the tables.
class FieldSpec {
 public:
  int q() const noexcept { return q_; }
  int p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  /// Monic modulus digits (size e+1) when e > 1, empty otherwise.
  const DigitPoly& modulus() const noexcept { return modulus_; }

  Element add(Element a, Element b) const noexcept { return t_->add[a * q_ + b]; }
  Element sub(Element a, Element b) const noexcept { return t_->add[a * q_ + t_->neg[b]]; }
  Element mul(Element a, Element b) const noexcept { return t_->mul[a * q_ + b]; }
  Element neg(Element a) const noexcept { return t_->neg[a]; }
  Element inv(Element a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
    return t_->inv[a];
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, unsigned k) const noexcept {
    Element r = 1;
    while (k--) r = mul(r, a);
    return r;
  }

  bool contains(int v) const noexcept { return v >= 0 && v < q_; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.q_ == b.q_ && a.modulus_ == b.modulus_;
  }

  friend FieldSpec field_make(int q, const std::optional<DigitPoly>& modulus_override);

 private:
  FieldSpec() = default;

  int q_ = 0;
  int p_ = 0;
  int e_ = 0;
  DigitPoly modulus_;
  std::shared_ptr<const detail::FieldTables> t_;
};

/// Builds F_q. For extension fields the built-in modulus is used unless an
/// override is given; an override is normalized to monic and must be
/// irreducible of degree e.
inline FieldSpec field_make(int q, const std::optional<DigitPoly>& modulus_override = std::nullopt) {
  if (q < 2 || q > 256) throw NotPrimePower("q=" + std::to_string(q) + " outside 2..256");
  auto pe = detail::prime_power(q);
  if (!pe) throw NotPrimePower("q=" + std::to_string(q) + " is not a prime power");
  const auto [p, e] = *pe;

  FieldSpec f;
  f.q_ = q;
  f.p_ = p;
  f.e_ = e;

  if (modulus_override && e == 1)
    throw ReducibleModulus("modulus override given for prime field F_" + std::to_string(q));
  if (e > 1) {
    DigitPoly mod = modulus_override ? *modulus_override : *detail::default_modulus(q);
    for (int& d : mod) {
      if (d < 0 || d >= p) throw ReducibleModulus("modulus digit out of range for p=" + std::to_string(p));
    }
    detail::trim(mod);
    if (static_cast<int>(mod.size()) != e + 1)
      throw ReducibleModulus("modulus must have degree " + std::to_string(e));
    const int lead_inv = detail::mod_inverse(mod.back(), p);
    for (int& d : mod) d = d * lead_inv % p;
    if (!detail::is_irreducible(mod, p)) throw ReducibleModulus("modulus is reducible over F_" + std::to_string(p));
    f.modulus_ = std::move(mod);
  }

  auto t = std::make_shared<detail::FieldTables>();
  t->add.resize(q * q);
  t->mul.resize(q * q);
  t->neg.resize(q);
  t->inv.assign(q, 0);

  auto digits = [&](int v) {
    DigitPoly d(e);
    for (int i = 0; i < e; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  auto encode = [&](const DigitPoly& d) {
    int v = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
    return v;
  };

  for (int a = 0; a < q; ++a) {
    const DigitPoly da = digits(a);
    DigitPoly dn(e);
    for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
    t->neg[a] = static_cast<Element>(encode(dn));
    for (int b = 0; b < q; ++b) {
      const DigitPoly db = digits(b);
      DigitPoly s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      t->add[a * q + b] = static_cast<Element>(encode(s));
      if (e == 1) {
        t->mul[a * q + b] = static_cast<Element>(a * b % p);
      } else {
        DigitPoly prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        DigitPoly r = detail::poly_rem(prod, f.modulus_, p);
        t->mul[a * q + b] = static_cast<Element>(encode(r));
      }
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (t->mul[a * q + b] == 1) {
        t->inv[a] = static_cast<Element>(b);
        break;
      }
  f.t_ = std::move(t);
  return f;
}

}  // namespace mseq
