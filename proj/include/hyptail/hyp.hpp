#ifndef HYPTAIL_HYP_HPP
#define HYPTAIL_HYP_HPP

#include "hyptail/binom.hpp"
#include "hyptail/dist.hpp"
#include "hyptail/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace hyptail {

/// Urn of n marbles, i of them black, sample of size k without replacement.
struct HypParams {
    long n = 1;
    long i = 1;
    long k = 1;

    HypParams() = default;
    HypParams(long n_, long i_, long k_) : n(n_), i(i_), k(k_)
    {
        if (n < 1 || i < 1 || i > n || k < 1 || k > n) {
            throw InvalidParams("invalid hypergeometric parameters (n=" + std::to_string(n) + ", i=" + std::to_string(i) + ", k=" + std::to_string(k) + ")");
        }
    }

    long support_lo() const { return std::max(0L, k - (n - i)); }
    long support_hi() const { return std::min(i, k); }

    ExactRational mean() const { return make_rational(i * k, n); }
    long threshold() const { return to_long(ceil(mean())); }

    ExactRational variance() const
    {
        if (n == 1) {
            return 0;
        }
        return make_rational(BigInt(k) * i * (n - i) * (n - k), BigInt(n) * n * (n - 1));
    }

    // (n-i)(n-k)/n
    ExactRational complement_mean() const { return make_rational((n - i) * (n - k), n); }

    friend bool operator==(const HypParams&, const HypParams&) = default;
};

namespace detail {

// Hyp(n, i, k) for 0 <= i, k <= n (zero black marbles or an empty sample
// allowed; the shifted laws Z_m need these).
inline DiscreteDist hyp_dist_unchecked(long n, long i, long k)
{
    if (n < 0 || i < 0 || k < 0 || i > n || k > n) {
        throw InvalidParams("invalid hypergeometric parameters");
    }
    const long lo = std::max(0L, k - (n - i));
    const long hi = std::min(i, k);
    std::vector<BigInt> w;
    w.reserve(static_cast<std::size_t>(hi - lo + 1));
    w.push_back(binom(i, lo) * binom(n - i, k - lo));
    for (long j = lo; j < hi; ++j) {
        // w_{j+1} = w_j * (i-j)(k-j) / ((j+1)(n-i-k+j+1))
        BigInt next = w.back() * (i - j) * (k - j);
        const BigInt den = BigInt(j + 1) * (n - i - k + j + 1);
        mpz_divexact(next.get_mpz_t(), next.get_mpz_t(), den.get_mpz_t());
        w.push_back(std::move(next));
    }
    return DiscreteDist(lo, std::move(w), binom(n, k));
}

inline long threshold_of(const ExactRational& t) { return to_long(ceil(t)); }

}  // namespace detail

inline DiscreteDist hyp_dist(const HypParams& p) { return detail::hyp_dist_unchecked(p.n, p.i, p.k); }

/// Bin(k, p) with exact rational p.
inline DiscreteDist bin_dist(long k, const ExactRational& p)
{
    if (k < 0) {
        throw InvalidParams("binomial with negative number of trials");
    }
    if (p < 0 || p > 1) {
        throw InvalidParams("binomial success probability outside [0, 1]");
    }
    const BigInt a = p.get_num();
    const BigInt b = p.get_den();
    const BigInt c = b - a;
    std::vector<BigInt> apow(static_cast<std::size_t>(k + 1));
    std::vector<BigInt> cpow(static_cast<std::size_t>(k + 1));
    apow[0] = 1;
    cpow[0] = 1;
    for (long j = 1; j <= k; ++j) {
        apow[static_cast<std::size_t>(j)] = apow[static_cast<std::size_t>(j - 1)] * a;
        cpow[static_cast<std::size_t>(j)] = cpow[static_cast<std::size_t>(j - 1)] * c;
    }
    std::vector<BigInt> w;
    w.reserve(static_cast<std::size_t>(k + 1));
    BigInt coef = 1;
    for (long j = 0; j <= k; ++j) {
        w.push_back(coef * apow[static_cast<std::size_t>(j)] * cpow[static_cast<std::size_t>(k - j)]);
        coef *= (k - j);
        mpz_divexact_ui(coef.get_mpz_t(), coef.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    BigInt total;
    mpz_pow_ui(total.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k));
    return DiscreteDist(0, std::move(w), std::move(total));
}

/// P(value >= t) for an integer-valued law, i.e. the mass at ceil(t) and above.
inline ExactRational tail(const DiscreteDist& d, const ExactRational& t)
{
    return make_rational(d.tail_weight(detail::threshold_of(t)), d.total());
}

inline ExactRational mad_direct(const DiscreteDist& d, const ExactRational& center)
{
    // sum_j w_j |j*den - num| / (total*den)
    const BigInt& num = center.get_num();
    const BigInt& den = center.get_den();
    BigInt s = 0;
    BigInt dev;
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
        dev = den * (d.offset() + static_cast<long>(idx)) - num;
        s += d.weights()[idx] * abs(dev);
    }
    return make_rational(s, d.total() * den);
}

/// E(value | value >= t).
inline ExactRational tce(const DiscreteDist& d, const ExactRational& t)
{
    const long from = std::max(detail::threshold_of(t), d.min_value());
    BigInt mass = 0;
    BigInt first_moment = 0;
    for (long j = from; j <= d.max_value(); ++j) {
        const BigInt& w = d.weight(j);
        mass += w;
        first_moment += w * j;
    }
    if (mass == 0) {
        throw EmptyTail("tail conditional expectation over an empty tail");
    }
    return make_rational(first_moment, mass);
}

/// Law of the value conditioned on {value >= t}.
inline DiscreteDist conditional_tail_dist(const DiscreteDist& d, const ExactRational& t)
{
    const long from = std::max(detail::threshold_of(t), d.min_value());
    if (from > d.max_value()) {
        throw EmptyTail("conditioning on an empty tail");
    }
    std::vector<BigInt> w(d.weights().begin() + (from - d.offset()), d.weights().end());
    BigInt total = 0;
    for (const auto& x : w) {
        total += x;
    }
    if (total == 0) {
        throw EmptyTail("conditioning on an empty tail");
    }
    return DiscreteDist(from, std::move(w), std::move(total));
}

/// Smallest s with CDF(s) >= 1/2.
inline long median(const DiscreteDist& d)
{
    BigInt acc = 0;
    for (long j = d.min_value(); j <= d.max_value(); ++j) {
        acc += d.weight(j);
        if (2 * acc >= d.total()) {
            return j;
        }
    }
    return d.max_value();
}

/// Closed form of E|H - ik/n|: (2m/n)(n-i-k+m) P(H = m), m = ceil(ik/n).
inline ExactRational mad_closed_hyp(const HypParams& p)
{
    const long m = p.threshold();
    const ExactRational pm = hyp_dist(p).mass(m);
    return ExactRational(make_rational(2 * m, p.n) * (p.n - p.i - p.k + m) * pm);
}

/// Closed form of E|X - kp| for X ~ Bin(k, p): 2m(1-p) P(X = m), m = ceil(kp).
inline ExactRational mad_closed_bin(long k, const ExactRational& p)
{
    if (p < 0 || p > 1) {
        throw InvalidParams("binomial success probability outside [0, 1]");
    }
    const long m = detail::threshold_of(ExactRational(k * p));
    const ExactRational pm = bin_dist(k, p).mass(m);
    return ExactRational(2 * m * (1 - p) * pm);
}

/// P(H >= m) via the inverse factorial moment of Z_m ~ Hyp(n-m, i-m, k-m):
/// C(k,m) C(i,m) / C(n,m) * E[1 / C(Z_m + m, m)].
inline ExactRational tail_via_factorial_identity(const HypParams& p, long m)
{
    if (m < 0 || m > std::min(p.i, p.k)) {
        throw InvalidParams("factorial identity: m outside [0, min(i, k)]");
    }
    const DiscreteDist z = detail::hyp_dist_unchecked(p.n - m, p.i - m, p.k - m);
    // E[1/C(Z+m, m)] = sum_z w_z / (total * C(z+m, m)); accumulate over a
    // common denominator.
    ExactRational moment = 0;
    for (long v = z.min_value(); v <= z.max_value(); ++v) {
        moment += make_rational(z.weight(v), binom(v + m, m));
    }
    moment /= z.total();
    const ExactRational prefactor = make_rational(binom(p.k, m) * binom(p.i, m), binom(p.n, m));
    return ExactRational(prefactor * moment);
}

/// Total variation distance between two laws on the integers.
inline ExactRational total_variation(const DiscreteDist& a, const DiscreteDist& b)
{
    const long lo = std::min(a.min_value(), b.min_value());
    const long hi = std::max(a.max_value(), b.max_value());
    BigInt s = 0;
    BigInt diff;
    for (long j = lo; j <= hi; ++j) {
        diff = a.weight(j) * b.total() - b.weight(j) * a.total();
        s += abs(diff);
    }
    return make_rational(s, 2 * a.total() * b.total());
}

/// d_TV(Hyp(n,i,k), Bin(k, i/n)) = (1/2) sum_{j=0}^{k} |P(H=j) - P(X=j)|.
inline ExactRational total_variation(const HypParams& p)
{
    return total_variation(hyp_dist(p), bin_dist(p.k, make_rational(p.i, p.n)));
}

/// Every exact quantity of Hyp(n, i, k) used by the bounds.
struct HypProfile {
    HypParams params;
    ExactRational mean;
    ExactRational variance;
    long m_star = 0;
    ExactRational tail_at_mean;
    ExactRational mad;
    ExactRational tce_at_mean;
    long median = 0;
};

inline HypProfile profile(const HypParams& p, const DiscreteDist& h)
{
    HypProfile out;
    out.params = p;
    out.mean = p.mean();
    out.variance = p.variance();
    out.m_star = p.threshold();
    out.tail_at_mean = tail(h, out.mean);
    out.mad = mad_direct(h, out.mean);
    out.tce_at_mean = tce(h, out.mean);
    out.median = median(h);
    return out;
}

inline HypProfile profile(const HypParams& p) { return profile(p, hyp_dist(p)); }

}  // namespace hyptail

#endif  // HYPTAIL_HYP_HPP
