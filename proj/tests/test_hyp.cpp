#include "hyptail/hyptail.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <vector>

using namespace hyptail;

namespace {

ExactRational q(long a, long b) { return make_rational(a, b); }

std::vector<ExactRational> masses_of(std::initializer_list<ExactRational> xs) { return std::vector<ExactRational>(xs); }

// pmf of Hyp(n, i, k) by enumerating all k-subsets of n marbles, the first i black.
std::vector<ExactRational> enumerate_hyp(int n, int i, int k)
{
    std::vector<long> count(static_cast<std::size_t>(k + 1), 0);
    long subsets = 0;
    const std::uint32_t black = (1u << i) - 1u;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if (std::popcount(s) != k) {
            continue;
        }
        ++subsets;
        ++count[static_cast<std::size_t>(std::popcount(s & black))];
    }
    std::vector<ExactRational> out;
    for (long c : count) {
        out.push_back(make_rational(c, subsets));
    }
    return out;
}

// pmf of Bin(k, p) by expanding ((1-p) + p z)^k.
std::vector<ExactRational> expand_bin(long k, const ExactRational& p)
{
    std::vector<ExactRational> poly{1};
    for (long t = 0; t < k; ++t) {
        std::vector<ExactRational> next(poly.size() + 1, ExactRational(0));
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j] * (1 - p);
            next[j + 1] += poly[j] * p;
        }
        poly = std::move(next);
    }
    return poly;
}

// Brute force E|X - c| and E(X | X >= t) straight from the masses.
ExactRational mad_sum(const DiscreteDist& d, const ExactRational& c)
{
    ExactRational s = 0;
    for (long j = d.min_value(); j <= d.max_value(); ++j) {
        s += d.mass(j) * abs(ExactRational(j - c));
    }
    return s;
}

}  // namespace

TEST(HypDist, Examples)
{
    const DiscreteDist d = hyp_dist(HypParams(4, 2, 2));
    EXPECT_EQ(d.offset(), 0);
    EXPECT_EQ(d.masses(), masses_of({q(1, 6), q(2, 3), q(1, 6)}));

    const DiscreteDist all_black = hyp_dist(HypParams(7, 7, 3));
    EXPECT_EQ(all_black, DiscreteDist::point_mass(3));

    const DiscreteDist single = hyp_dist(HypParams(10, 1, 3));
    EXPECT_EQ(single.offset(), 0);
    EXPECT_EQ(single.masses(), masses_of({q(7, 10), q(3, 10)}));
}

TEST(HypDist, InvalidParams)
{
    EXPECT_THROW(HypParams(0, 1, 1), InvalidParams);
    EXPECT_THROW(HypParams(5, 0, 2), InvalidParams);
    EXPECT_THROW(HypParams(5, 6, 2), InvalidParams);
    EXPECT_THROW(HypParams(5, 2, 6), InvalidParams);
    EXPECT_THROW(HypParams(5, 2, 0), InvalidParams);
}

TEST(HypDist, MatchesSubsetEnumeration)
{
    for (int n = 1; n <= 12; ++n) {
        for (int i = 1; i <= n; ++i) {
            for (int k = 1; k <= n; ++k) {
                const auto expected = enumerate_hyp(n, i, k);
                const DiscreteDist d = hyp_dist(HypParams(n, i, k));
                for (long j = 0; j <= k; ++j) {
                    ASSERT_EQ(d.mass(j), expected[static_cast<std::size_t>(j)]) << n << "," << i << "," << k << " at " << j;
                }
            }
        }
    }
}

TEST(HypDist, NormalizedAndTight)
{
    auto check = [](long n, long i, long k) {
        const HypParams p(n, i, k);
        const DiscreteDist d = hyp_dist(p);
        ExactRational sum = 0;
        for (const auto& m : d.masses()) {
            sum += m;
        }
        ASSERT_EQ(sum, 1);
        ASSERT_EQ(d.min_value(), p.support_lo());
        ASSERT_EQ(d.max_value(), p.support_hi());
        ASSERT_GT(d.weights().front(), 0);
        ASSERT_GT(d.weights().back(), 0);
    };
    for (long n = 1; n <= 60; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                check(n, i, k);
            }
        }
    }
    for (long n : {150L, 300L}) {
        for (long i = 1; i <= n; i += 7) {
            for (long k = 1; k <= n; k += 11) {
                check(n, i, k);
            }
        }
    }
}

TEST(BinDist, Examples)
{
    EXPECT_EQ(bin_dist(2, q(1, 2)).masses(), masses_of({q(1, 4), q(1, 2), q(1, 4)}));
    EXPECT_EQ(bin_dist(3, 0), DiscreteDist::point_mass(0));
    EXPECT_EQ(bin_dist(4, q(1, 2)).mass(2), q(6, 16));
    EXPECT_THROW(bin_dist(3, q(3, 2)), InvalidParams);
    EXPECT_THROW(bin_dist(3, q(-1, 2)), InvalidParams);
}

TEST(BinDist, MatchesPolynomialExpansion)
{
    for (long k = 1; k <= 25; ++k) {
        for (long a = 0; a <= 7; ++a) {
            const ExactRational p = q(a, 7);
            const auto expected = expand_bin(k, p);
            const DiscreteDist d = bin_dist(k, p);
            for (long j = 0; j <= k; ++j) {
                ASSERT_EQ(d.mass(j), expected[static_cast<std::size_t>(j)]);
            }
        }
    }
}

TEST(Tail, Examples)
{
    const DiscreteDist d = hyp_dist(HypParams(4, 2, 2));
    EXPECT_EQ(tail(d, 1), q(5, 6));
    EXPECT_EQ(tail(d, 0), 1);
    EXPECT_EQ(tail(d, -3), 1);
    EXPECT_EQ(tail(d, q(1, 2)), q(5, 6));
    EXPECT_EQ(tail(d, 3), 0);
    EXPECT_EQ(tail(hyp_dist(HypParams(10, 1, 3)), q(3, 10)), q(3, 10));
}

TEST(Profile, Examples)
{
    const HypProfile a = profile(HypParams(4, 2, 2));
    EXPECT_EQ(a.mean, 1);
    EXPECT_EQ(a.variance, q(1, 3));
    EXPECT_EQ(a.m_star, 1);
    EXPECT_EQ(a.tail_at_mean, q(5, 6));
    EXPECT_EQ(a.mad, q(1, 3));
    EXPECT_EQ(a.tce_at_mean, q(6, 5));
    EXPECT_EQ(a.median, 1);

    const HypProfile b = profile(HypParams(9, 9, 4));
    EXPECT_EQ(b.variance, 0);
    EXPECT_EQ(b.mad, 0);
    EXPECT_EQ(b.tail_at_mean, 1);
    EXPECT_EQ(b.tce_at_mean, 4);

    const HypProfile c = profile(HypParams(20, 10, 4));
    EXPECT_EQ(c.mean, 2);
    EXPECT_EQ(c.variance, q(16, 19));
    EXPECT_EQ(c.tail_at_mean, q(3435, 4845));
    const DiscreteDist h = hyp_dist(HypParams(20, 10, 4));
    EXPECT_EQ(h.mass(0), q(210, 4845));
    EXPECT_EQ(h.mass(1), q(1200, 4845));

    EXPECT_EQ(profile(HypParams(1, 1, 1)).variance, 0);
}

TEST(Profile, VarianceMatchesDistribution)
{
    for (long n = 1; n <= 30; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                const HypParams p(n, i, k);
                const DiscreteDist d = hyp_dist(p);
                ASSERT_EQ(d.mean(), p.mean());
                ASSERT_EQ(d.variance(), p.variance());
            }
        }
    }
}

TEST(Mad, Examples)
{
    EXPECT_EQ(mad_direct(hyp_dist(HypParams(4, 2, 2)), 1), q(1, 3));
    EXPECT_EQ(mad_direct(DiscreteDist::point_mass(5), 5), 0);
    EXPECT_EQ(mad_direct(bin_dist(2, q(1, 2)), 1), q(1, 2));

    EXPECT_EQ(mad_closed_hyp(HypParams(4, 2, 2)), q(1, 3));
    EXPECT_EQ(mad_closed_hyp(HypParams(6, 6, 2)), 0);
    EXPECT_EQ(mad_closed_hyp(HypParams(20, 10, 4)), ExactRational(q(4, 20) * 8 * q(2025, 4845)));

    EXPECT_EQ(mad_closed_bin(2, q(1, 2)), q(1, 2));
    EXPECT_EQ(mad_closed_bin(5, 1), 0);
    EXPECT_EQ(mad_closed_bin(4, q(1, 2)), q(3, 4));
}

TEST(Mad, ClosedFormsMatchDirectSum)
{
    for (long n = 1; n <= 40; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                const HypParams p(n, i, k);
                ASSERT_EQ(mad_closed_hyp(p), mad_sum(hyp_dist(p), p.mean())) << n << "," << i << "," << k;
            }
        }
    }
    for (long k = 1; k <= 40; ++k) {
        for (long n = 1; n <= 40; ++n) {
            for (long i = 0; i <= n; ++i) {
                const ExactRational p = q(i, n);
                ASSERT_EQ(mad_closed_bin(k, p), mad_sum(bin_dist(k, p), ExactRational(k * p)));
            }
        }
    }
}

TEST(Tce, Examples)
{
    EXPECT_EQ(tce(hyp_dist(HypParams(4, 2, 2)), 1), q(6, 5));
    EXPECT_EQ(tce(DiscreteDist::point_mass(3), 3), 3);
    EXPECT_EQ(tce(bin_dist(2, q(1, 2)), 1), q(4, 3));
    EXPECT_THROW(tce(hyp_dist(HypParams(4, 2, 2)), 3), EmptyTail);
}

TEST(FactorialIdentity, Examples)
{
    EXPECT_EQ(tail_via_factorial_identity(HypParams(4, 2, 2), 1), q(5, 6));
    EXPECT_EQ(tail_via_factorial_identity(HypParams(17, 5, 9), 0), 1);
    EXPECT_EQ(tail_via_factorial_identity(HypParams(20, 10, 4), 2), q(3435, 4845));
    EXPECT_THROW(tail_via_factorial_identity(HypParams(4, 2, 2), 3), InvalidParams);
    EXPECT_THROW(tail_via_factorial_identity(HypParams(4, 2, 2), -1), InvalidParams);
}

TEST(FactorialIdentity, MatchesTail)
{
    for (long n = 1; n <= 25; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                const HypParams p(n, i, k);
                const DiscreteDist d = hyp_dist(p);
                for (long m = 0; m <= std::min(i, k); ++m) {
                    ASSERT_EQ(tail_via_factorial_identity(p, m), tail(d, m));
                }
            }
        }
    }
}

TEST(TotalVariation, Examples)
{
    EXPECT_EQ(total_variation(HypParams(4, 2, 2)), q(1, 6));
    for (long n = 1; n <= 12; ++n) {
        for (long i = 1; i <= n; ++i) {
            EXPECT_EQ(total_variation(HypParams(n, i, 1)), 0);
        }
    }
    EXPECT_LE(total_variation(HypParams(8, 4, 4)), q(3, 7));
}

TEST(TotalVariation, MatchesHalfL1Distance)
{
    for (long n = 1; n <= 20; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                const HypParams p(n, i, k);
                const auto x = expand_bin(k, q(i, n));
                const DiscreteDist h = hyp_dist(p);
                ExactRational s = 0;
                for (long j = 0; j <= k; ++j) {
                    s += abs(ExactRational(h.mass(j) - x[static_cast<std::size_t>(j)]));
                }
                ASSERT_EQ(total_variation(p), ExactRational(s / 2));
            }
        }
    }
}

TEST(ConditionalTail, Examples)
{
    const DiscreteDist a = conditional_tail_dist(hyp_dist(HypParams(4, 2, 2)), 1);
    EXPECT_EQ(a.offset(), 1);
    EXPECT_EQ(a.masses(), masses_of({q(4, 5), q(1, 5)}));

    const DiscreteDist d = hyp_dist(HypParams(20, 10, 4));
    EXPECT_EQ(conditional_tail_dist(d, 0), d);
    EXPECT_EQ(conditional_tail_dist(d, -2), d);

    const DiscreteDist b = conditional_tail_dist(bin_dist(2, q(1, 2)), 1);
    EXPECT_EQ(b.offset(), 1);
    EXPECT_EQ(b.masses(), masses_of({q(2, 3), q(1, 3)}));
    EXPECT_THROW(conditional_tail_dist(d, 5), EmptyTail);
}

TEST(Identities, MadEqualsTwiceTailTimesTceGap)
{
    for (long n = 1; n <= 40; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                const HypProfile pr = profile(HypParams(n, i, k));
                ASSERT_EQ(pr.mad / 2, ExactRational(pr.tail_at_mean * (pr.tce_at_mean - pr.mean)));
            }
        }
    }
}

TEST(Identities, ComplementAndReflectionSymmetry)
{
    for (long n = 1; n <= 40; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                const DiscreteDist h = hyp_dist(HypParams(n, i, k));
                ASSERT_EQ(h, hyp_dist(HypParams(n, k, i)));
                if (i < n) {
                    const DiscreteDist c = hyp_dist(HypParams(n, n - i, k));
                    for (long j = 0; j <= k; ++j) {
                        ASSERT_EQ(h.mass(j), c.mass(k - j));
                    }
                }
                if (2 * i == n) {
                    ASSERT_GE(tail(h, q(k, 2)), q(1, 2));
                }
            }
        }
    }
}

TEST(Median, Examples)
{
    EXPECT_EQ(median(hyp_dist(HypParams(4, 2, 2))), 1);
    EXPECT_EQ(median(bin_dist(2, q(1, 2))), 1);
    EXPECT_EQ(median(bin_dist(3, q(1, 2))), 1);
    EXPECT_EQ(median(DiscreteDist::point_mass(4)), 4);
}

TEST(Median, WithinOneOfMean)
{
    // Hyp(n,i,k) = Hyp(n,k,i), so i <= k covers every law.
    for (long n = 1; n <= 300; ++n) {
        for (long k = 1; k <= n; ++k) {
            for (long i = 1; i <= k; ++i) {
                const HypParams p(n, i, k);
                const long med = median(hyp_dist(p));
                ASSERT_LE(abs(ExactRational(med - p.mean())), 1) << n << "," << i << "," << k;
            }
        }
    }
}

TEST(Median, IntegerMeanBinomial)
{
    for (long k = 1; k <= 200; ++k) {
        for (long m = 0; m <= k; ++m) {
            const DiscreteDist x = bin_dist(k, q(m, k));
            ASSERT_EQ(median(x), m) << k << " " << m;
            ASSERT_GE(tail(x, m), q(1, 2));
        }
    }
}
