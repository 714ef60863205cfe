#ifndef HYPTAIL_BINOM_HPP
#define HYPTAIL_BINOM_HPP

#include "hyptail/rational.hpp"

#include <stdexcept>

namespace hyptail {

/// C(n, r), zero outside 0 <= r <= n.
///
/// Multiplicative formula: after step j the accumulator holds C(n-r+j, j),
/// so every division is exact.
inline BigInt binom(long n, long r)
{
    if (n < 0) {
        throw InvalidParams("binom: n must be nonnegative");
    }
    if (r < 0 || r > n) {
        return 0;
    }
    if (r > n - r) {
        r = n - r;
    }
    BigInt acc = 1;
    for (long j = 1; j <= r; ++j) {
        acc *= static_cast<unsigned long>(n - r + j);
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(j));
    }
    return acc;
}

inline BigInt factorial(long n)
{
    if (n < 0) {
        throw InvalidParams("factorial: n must be nonnegative");
    }
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

}  // namespace hyptail

#endif  // HYPTAIL_BINOM_HPP
