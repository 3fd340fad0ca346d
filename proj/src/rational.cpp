#include "genset/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace genset {

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

BigInt falling_factorial(std::int64_t n, std::int64_t r) {
  if (r < 0) throw std::invalid_argument("falling_factorial: negative length");
  BigInt result = 1;
  for (std::int64_t i = 0; i < r; ++i) result *= (n - i);
  return result;
}

BigInt factorial(std::int64_t n) { return falling_factorial(n, n); }

BigInt big_pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  return Rational(big_pow(numerator(base), exponent),
                  big_pow(denominator(base), exponent));
}

std::string to_fraction_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

double SurdValue::approx() const {
  return to_double(rational_part) +
         to_double(sqrt_coeff) * std::sqrt(to_double(radicand));
}

bool SurdValue::bounds_from_above(const Rational& value) const {
  // value <= a + b*sqrt(c)  <=>  value - a <= b*sqrt(c)
  Rational gap = value - rational_part;
  if (gap <= 0) return true;
  return gap * gap <= sqrt_coeff * sqrt_coeff * radicand;
}

bool at_least_sqrt_times(const Rational& lhs, const Rational& radicand,
                         const Rational& scale) {
  if (lhs < 0) return false;
  return lhs * lhs >= radicand * scale * scale;
}

}  // namespace genset
