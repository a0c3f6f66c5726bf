#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace derange {

/// Arbitrary precision integer; every group order and class count uses it.
using BigInt = mpz_class;

/// Arbitrary precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Builds num/den reduced. Throws std::domain_error when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// "p/q" text, always with an explicit denominator ("0/1", "3/1").
std::string to_fraction_string(const Rational& r);

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Decimal approximation to `digits` places, rounded half away from zero.
std::string to_decimal_string(const Rational& r, int digits = 6);

/// Nearest integer, realised as floor(x + 1/2).
BigInt nearest_integer(const Rational& r);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// Converts to uint64, throwing std::overflow_error when it does not fit.
std::uint64_t to_u64(const BigInt& v);

BigInt from_u64(std::uint64_t v);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace derange
