#ifndef HYPTAIL_RATIONAL_HPP
#define HYPTAIL_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyptail {

using BigInt = mpz_class;

// Arbitrary-precision rational in canonical form (gmpxx keeps results of
// arithmetic canonical; values built from a numerator/denominator pair go
// through make_rational).
using ExactRational = mpq_class;

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct EmptyTail : std::domain_error {
    using std::domain_error::domain_error;
};

inline ExactRational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    ExactRational q(num, den);
    q.canonicalize();
    return q;
}

inline ExactRational make_rational(long num, long den)
{
    return make_rational(BigInt(num), BigInt(den));
}

inline BigInt floor(const ExactRational& q)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline BigInt ceil(const ExactRational& q)
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline long to_long(const BigInt& z)
{
    if (!z.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in long");
    }
    return z.get_si();
}

inline ExactRational abs(const ExactRational& q)
{
    return q < 0 ? ExactRational(-q) : q;
}

// "p/q" (or "p" when the denominator is 1).
inline std::string to_string(const ExactRational& q)
{
    return q.get_str(10);
}

inline ExactRational parse_rational(std::string_view text)
{
    ExactRational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
        throw std::invalid_argument("not a rational: " + std::string(text));
    }
    q.canonicalize();
    return q;
}

}  // namespace hyptail

#endif  // HYPTAIL_RATIONAL_HPP
