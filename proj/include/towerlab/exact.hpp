#pragma once

// Arbitrary-precision integers and rationals used throughout the library.
// Every measure, height and lag is exact; nothing here ever rounds.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace towerlab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Exact measure of a set. Always kept in canonical (reduced) form.
using Measure = mpq_class;

std::string to_string(const BigInt& v);

/// Canonical "num/den" form, e.g. "1/4", "0/1", "3/1".
std::string to_string(const Rational& v);

BigInt parse_bigint(std::string_view text);

/// Accepts "p/q" or a plain integer. The result is canonicalized.
Rational parse_rational(std::string_view text);

BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt ceil_div(const BigInt& num, const BigInt& den);

/// Smallest integer >= v.
BigInt ceil(const Rational& v);
/// Largest integer <= v.
BigInt floor(const Rational& v);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned long exp);
Rational pow(const Rational& base, unsigned long exp);

/// 2-adic valuation of a positive integer.
unsigned long two_adic_valuation(const BigInt& n);

/// Narrowing with a range check; throws std::overflow_error.
std::int64_t to_int64(const BigInt& v);

std::string join(const std::vector<BigInt>& values, std::string_view sep = ",");

}  // namespace towerlab
