#include "arithvol/numeric.hpp"
#include "arithvol/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace arithvol {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::UnsupportedCombination: return "UnsupportedCombination";
        case ErrorKind::NegativeDegree: return "NegativeDegree";
        case ErrorKind::ModelMismatch: return "ModelMismatch";
        case ErrorKind::BudgetExhausted: return "BudgetExhausted";
        case ErrorKind::ScopeExceeded: return "ScopeExceeded";
        case ErrorKind::AmbiguousBoundary: return "AmbiguousBoundary";
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::NotRational: return "NotRational";
        case ErrorKind::ZeroSection: return "ZeroSection";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotAmpleInCatalog: return "NotAmpleInCatalog";
        case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    }
    return "Unknown";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

Real50 to_real(const Rational& q) {
    return Real50(boost::multiprecision::numerator(q)) / Real50(boost::multiprecision::denominator(q));
}

Real50 to_real(const BigInt& z) { return Real50(z); }

Enclosure enclose(const Real50& x) {
    const double d = x.convert_to<double>();
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {std::nextafter(d, -inf), std::nextafter(d, inf)};
}

Real50 exp_rational(const Rational& q) { return boost::multiprecision::exp(to_real(q)); }

Real50 log_integer(std::int64_t n) {
    if (n <= 0) throw Error(ErrorKind::InvalidArgument, "log of non-positive integer");
    return boost::multiprecision::log(Real50(n));
}

std::string to_string(const Rational& q) {
    const BigInt& num = boost::multiprecision::numerator(q);
    const BigInt& den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
        BigInt num(std::string(text.substr(0, slash)));
        BigInt den(std::string(text.substr(slash + 1)));
        if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e) != nullptr) throw;
        throw Error(ErrorKind::InvalidArgument, "cannot parse rational '" + std::string(text) + "'");
    }
}

BigInt floor_real(const Real50& x) {
    Real50 f = boost::multiprecision::floor(x);
    return BigInt(f);
}

bool floor_certified(const Real50& x, BigInt& out) {
    // Beyond ~1e35 the fractional part is below the working precision.
    if (boost::multiprecision::abs(x) >= Real50("1e35")) return false;
    Real50 f = boost::multiprecision::floor(x);
    Real50 frac = x - f;
    const Real50 eps("1e-40");
    if (frac < eps || frac > Real50(1) - eps) {
        // Exact integers (e.g. x == 0) are representable and decidable.
        if (frac == 0) {
            out = BigInt(f);
            return true;
        }
        return false;
    }
    out = BigInt(f);
    return true;
}

bool fits_int64(const BigInt& z) {
    return z >= BigInt(std::numeric_limits<std::int64_t>::min()) &&
           z <= BigInt(std::numeric_limits<std::int64_t>::max());
}

std::int64_t to_int64(const BigInt& z) {
    if (!fits_int64(z)) throw Error(ErrorKind::ScopeExceeded, "integer does not fit in 64 bits");
    return z.convert_to<std::int64_t>();
}

int padic_valuation(const BigInt& z, std::int64_t p) {
    if (z == 0) throw Error(ErrorKind::ZeroSection, "valuation of zero");
    BigInt v = z;
    int k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

int padic_valuation(std::int64_t z, std::int64_t p) {
    if (z == 0) throw Error(ErrorKind::ZeroSection, "valuation of zero");
    int k = 0;
    while (z % p == 0) {
        z /= p;
        ++k;
    }
    return k;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

std::string format_real(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

}  // namespace arithvol
