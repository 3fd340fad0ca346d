#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace genset {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

BigInt binomial(std::int64_t n, std::int64_t r);
BigInt falling_factorial(std::int64_t n, std::int64_t r);
BigInt factorial(std::int64_t n);
BigInt big_pow(const BigInt& base, unsigned exponent);
Rational rational_pow(const Rational& base, unsigned exponent);

/// "p/q" (or "p" when q = 1).
std::string to_fraction_string(const Rational& value);
double to_double(const Rational& value);

/// A number of the form rational_part + sqrt_coeff * sqrt(radicand) with
/// sqrt_coeff >= 0 and radicand >= 0, compared exactly against rationals.
struct SurdValue {
  Rational rational_part;
  Rational sqrt_coeff;
  Rational radicand;

  double approx() const;
  /// Exact test of `value <= *this`.
  bool bounds_from_above(const Rational& value) const;
};

/// Exact test of `lhs >= sqrt(radicand) * scale` for lhs, scale >= 0.
bool at_least_sqrt_times(const Rational& lhs, const Rational& radicand,
                         const Rational& scale);

}  // namespace genset
