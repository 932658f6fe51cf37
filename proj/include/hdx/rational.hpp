#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <string>

namespace hdx {

/// Exact arbitrary-precision rational, always kept in canonical reduced form.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Formats as "p/q" (the denominator is always printed, so 2 becomes "2/1").
inline std::string to_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Parses "p/q", "p", or a finite decimal such as "0.7".
inline Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    if (slash != std::string::npos)
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    auto dot = text.find('.');
    if (dot == std::string::npos)
        return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t k = dot + 1; k < text.size(); ++k)
        scale *= 10;
    if (digits.empty() || digits == "-" || digits == "+")
        digits += "0";
    return Rational(BigInt(digits), scale);
}

inline double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

inline Rational pow(const Rational& base, std::uint64_t exponent)
{
    Rational result = 1;
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1U)
            result *= b;
        b *= b;
        exponent >>= 1U;
    }
    return result;
}

/// Binomial coefficient C(n, k) as a 64-bit integer; 0 outside 0 <= k <= n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (std::int64_t j = 1; j <= k; ++j)
        result = result * (n - k + j) / j;
    return result;
}

} // namespace hdx
