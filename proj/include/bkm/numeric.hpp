#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bkm/errors.hpp"

namespace bkm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Binomial coefficient C(n, k) for any integer n, k >= 0
/// (C(n, k) = n(n-1)...(n-k+1)/k!, so negative n is allowed).
inline BigInt binomial(long long n, long long k) {
  if (k < 0) return 0;
  if (n >= 0 && k > n) return 0;
  BigInt num = 1;
  for (long long j = 0; j < k; ++j) num *= BigInt(n - j);
  return num / factorial(static_cast<unsigned>(k));
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

/// Converts an exact rational known to be integral; throws `internal`
/// with `context` otherwise.
inline BigInt to_integer(const Rational& r, std::string_view context = "value") {
  if (!is_integer(r)) {
    fail(ErrorCode::internal,
         std::string(context) + " is not integral: " + r.str());
  }
  return boost::multiprecision::numerator(r);
}

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

/// "num/den" with den >= 1, the wire format for rational coefficients.
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Accepts "n" or "n/d".
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    require(den != 0, ErrorCode::precondition, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(ErrorCode::precondition, "malformed rational '" + std::string(text) + "'");
  }
}

}  // namespace bkm
