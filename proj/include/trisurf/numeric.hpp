#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace trisurf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/// Number of perfect matchings on t labeled points: (t-1)(t-3)...1 for even t,
/// 1 for t = 0.
inline BigInt perfect_matching_count(int t) {
    if (t < 0 || t % 2 != 0) throw std::invalid_argument("perfect_matching_count: need even t >= 0");
    BigInt r = 1;
    for (int i = t - 1; i > 1; i -= 2) r *= i;
    return r;
}

inline double to_double(const BigRat& q) {
    return q.convert_to<double>();
}

/// "3", or "6/5" when the denominator is not 1.
inline std::string rational_string(const BigRat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

}  // namespace trisurf
