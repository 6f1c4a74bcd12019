#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "qk/errors.hpp"

namespace qk {

/// Ground field: arbitrary-precision rationals, always in lowest terms with
/// positive denominator (canonical form is maintained by GMP).
using Scalar = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Scalar scalar_pow(const Scalar& base, long e) {
    if (e == 0) return Scalar(1);
    if (base == 0) {
        if (e < 0) throw DegenerateOperand("0^negative");
        return Scalar(0);
    }
    Scalar b = e < 0 ? Scalar(1) / base : base;
    long n = e < 0 ? -e : e;
    Scalar r(1);
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

/// C(x,2) = x(x-1)/2 extended to all integers (the exponent convention used
/// by the level-structure factors).
inline long choose2(long x) { return x * (x - 1) / 2; }

inline Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer r(1);
    for (long i = 0; i < k; ++i) {
        r *= Integer(n - i);
        r /= Integer(i + 1);
    }
    return r;
}

/// First consecutive primes starting at the seed-th prime (seed = 1 -> 2,3,5,...).
/// Used to instantiate the torus characters Lambda_1..Lambda_n at generic
/// rationals; genericity of distinct primes keeps every tangent weight != 1.
inline std::vector<Scalar> lambda_primes(int count, int seed = 1) {
    std::vector<Scalar> out;
    out.reserve(count);
    int found = 0;
    int needed_rank = seed + count - 1;
    for (int p = 2; found < needed_rank; ++p) {
        bool prime = p >= 2;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (!prime) continue;
        ++found;
        if (found >= seed) out.emplace_back(p);
    }
    return out;
}

inline std::string scalar_str(const Scalar& s) { return s.str(); }

} // namespace qk
