#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "covercount/errors.hpp"

namespace covercount {

// Exact arbitrary-precision integer. Counters always return nonnegative
// values; signed intermediates are allowed inside recurrences.
using BigCount = boost::multiprecision::cpp_int;

inline BigCount pow2(long long e) {
    if (e < 0) throw InvalidInputError("pow2: negative exponent");
    return BigCount(1) << static_cast<unsigned>(e);
}

inline BigCount factorial(int n) {
    if (n < 0) throw InvalidInputError("factorial: negative argument");
    BigCount r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigCount binomial(int n, int k) {
    if (n < 0) throw InvalidInputError("binomial: negative n");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is always a binomial prefix
    }
    return r;
}

// Exact quotient; throws if the division leaves a remainder.
inline BigCount exact_div(const BigCount& num, const BigCount& den,
                          const char* context) {
    if (den == 0) throw InvalidInputError("exact_div: zero divisor");
    BigCount q = num / den;
    if (q * den != num)
        throw InternalConsistencyError(std::string("exact division failed in ") +
                                       context);
    return q;
}

}  // namespace covercount
