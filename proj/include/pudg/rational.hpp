#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace pudg {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Accepts "p/q", integers and plain decimals ("0.25").
Rational parse_rational(std::string_view text);

// Always "num/den" with den > 0, e.g. "1/1", "0/1".
std::string to_string(const Rational& r);
double to_double(const Rational& r);

BigInt pow2(std::uint64_t k);
Rational inv_pow2(std::uint64_t k);
Rational pow(const Rational& base, std::uint64_t e);
BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace pudg
