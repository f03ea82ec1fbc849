#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace arithvol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// 50 decimal digits; used wherever a transcendental threshold must be
/// compared against an exact quantity.
using Real50 = boost::multiprecision::cpp_bin_float_50;

/// Closed real interval [lo, hi] guaranteed to contain the true value.
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
    [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
};

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Real50 to_real(const Rational& q);
Real50 to_real(const BigInt& z);

/// Outward-rounded double interval around a high-precision value.
Enclosure enclose(const Real50& x);

/// exp(q) for exact rational q.
Real50 exp_rational(const Rational& q);

/// log(n) for a positive integer.
Real50 log_integer(std::int64_t n);

/// "num/den" (or "num" when den == 1).
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// Floor of a real known to high precision. When the value is within
/// 1e-40 of an integer the result is the integer below, which keeps
/// callers that use it as an upper bound sound only if they pass a
/// value that cannot be an integer; see `floor_certified` for the
/// checked variant.
BigInt floor_real(const Real50& x);

/// Floor with a certificate: returns false when x is too close to an
/// integer to decide.
bool floor_certified(const Real50& x, BigInt& out);

std::int64_t to_int64(const BigInt& z);
bool fits_int64(const BigInt& z);

/// p-adic valuation of a nonzero integer.
int padic_valuation(const BigInt& z, std::int64_t p);
int padic_valuation(std::int64_t z, std::int64_t p);

bool is_prime(std::int64_t n);

/// Format with the given number of significant digits ("%.*g").
std::string format_real(double x, int digits = 12);

}  // namespace arithvol
