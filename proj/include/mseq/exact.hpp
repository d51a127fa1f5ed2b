#pragma once

// Exact integer / rational types shared by the census and polytope code.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <string>

namespace mseq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Shortest round-trip decimal for a double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "num/den" or a plain integer.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text.c_str()));
  return Rational(BigInt(text.substr(0, slash).c_str()), BigInt(text.substr(slash + 1).c_str()));
}

/// ceil(a / b) for a >= 0, b > 0.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace mseq
