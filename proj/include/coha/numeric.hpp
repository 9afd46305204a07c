#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace coha {

// Exact arithmetic everywhere: class data is arbitrary precision, series and
// polynomial coefficients are exact rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline std::string int_str(const Int& v) { return v.str(); }

inline std::string rat_str(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline Int factorial(long n) {
    Int f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int b = 1;
    for (long j = 0; j < k; ++j) { b *= (n - j); b /= (j + 1); }
    return b;
}

// Raised when an operation would need terms above the requested truncation
// order (truncation orders are always explicit arguments).
struct degree_overflow_error : std::runtime_error {
    explicit degree_overflow_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace coha
