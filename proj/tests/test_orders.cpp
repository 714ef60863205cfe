#include "hyptail/hyptail.hpp"

#include "random_pairs.hpp"

#include <gtest/gtest.h>

using namespace hyptail;
using random_pairs::Corpus;
using random_pairs::lr_brute;
using random_pairs::st_brute;

namespace {

ExactRational q(long a, long b) { return make_rational(a, b); }

}  // namespace

TEST(StOrder, Examples)
{
    const DiscreteDist a = conditional_tail_dist(hyp_dist(HypParams(4, 2, 2)), 1);
    const DiscreteDist b = conditional_tail_dist(bin_dist(2, q(1, 2)), 1);
    const OrderWitness w = st_order(a, b);
    EXPECT_TRUE(w.holds);
    EXPECT_FALSE(w.counterexample.has_value());
    EXPECT_EQ(tail(a, 2), q(1, 5));
    EXPECT_EQ(tail(b, 2), q(1, 3));

    EXPECT_TRUE(st_order(a, a).holds);

    const OrderWitness bad = st_order(DiscreteDist::point_mass(2), DiscreteDist::point_mass(1));
    EXPECT_FALSE(bad.holds);
    ASSERT_TRUE(bad.counterexample.has_value());
    EXPECT_EQ(bad.counterexample->first, 2);
    EXPECT_LT(bad.slack, 0);
}

TEST(LrOrder, Examples)
{
    const DiscreteDist a = conditional_tail_dist(hyp_dist(HypParams(4, 2, 2)), 1);
    const DiscreteDist b = conditional_tail_dist(bin_dist(2, q(1, 2)), 1);
    EXPECT_TRUE(lr_order(a, b).holds);
    // P_a(1)/P_b(1) = 6/5 >= P_a(2)/P_b(2) = 3/5
    EXPECT_EQ(ExactRational(a.mass(1) / b.mass(1)), q(6, 5));
    EXPECT_EQ(ExactRational(a.mass(2) / b.mass(2)), q(3, 5));

    EXPECT_TRUE(lr_order(b, b).holds);

    const DiscreteDist hi = bin_dist(2, q(3, 4));
    const DiscreteDist lo = bin_dist(2, q(1, 4));
    const OrderWitness w = lr_order(hi, lo);
    EXPECT_FALSE(w.holds);
    ASSERT_TRUE(w.counterexample.has_value());
    const auto [m, m2] = *w.counterexample;
    EXPECT_LT(m, m2);
    EXPECT_LT(hi.mass(m) * lo.mass(m2), hi.mass(m2) * lo.mass(m));
    EXPECT_TRUE(lr_order(lo, hi).holds);
}

TEST(LrOrder, BoundaryZeros)
{
    // a stops before b: a/b ratio reaches 0 and stays there.
    const DiscreteDist a = DiscreteDist::from_masses(0, {q(1, 2), q(1, 2)});
    const DiscreteDist b = DiscreteDist::from_masses(0, {q(1, 4), q(1, 4), q(1, 2)});
    EXPECT_TRUE(lr_order(a, b).holds);
    EXPECT_FALSE(lr_order(b, a).holds);
    // Disjoint supports in the right order.
    EXPECT_TRUE(lr_order(DiscreteDist::point_mass(0), DiscreteDist::point_mass(3)).holds);
    EXPECT_FALSE(lr_order(DiscreteDist::point_mass(3), DiscreteDist::point_mass(0)).holds);
}

TEST(Orders, MatchDefinitionsOnRandomPairs)
{
    Corpus corpus;
    int lr_count = 0;
    int st_count = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto [a, b] = corpus.next();
        const OrderWitness lr = lr_order(a, b);
        const OrderWitness st = st_order(a, b);
        ASSERT_EQ(lr.holds, lr_brute(a, b)) << t;
        ASSERT_EQ(st.holds, st_brute(a, b)) << t;
        if (!lr.holds) {
            ASSERT_TRUE(lr.counterexample.has_value());
            const auto [m, m2] = *lr.counterexample;
            ASSERT_LT(m, m2);
            ASSERT_LT(a.mass(m) * b.mass(m2), a.mass(m2) * b.mass(m));
        }
        if (!st.holds) {
            ASSERT_TRUE(st.counterexample.has_value());
            ASSERT_GT(tail(a, st.counterexample->first), tail(b, st.counterexample->first));
        }
        if (lr.holds) {
            ++lr_count;
            ASSERT_TRUE(st.holds) << "lr without st at sample " << t;
        }
        if (st.holds) {
            ++st_count;
            ASSERT_LE(a.mean(), b.mean()) << "st without mean order at sample " << t;
        }
    }
    EXPECT_GT(lr_count, 1000);
    EXPECT_GT(st_count, lr_count);
}

TEST(Orders, InvariantUnderScaling)
{
    Corpus corpus;
    for (int t = 0; t < 2000; ++t) {
        const auto [a, b] = corpus.next();
        const BigInt c = corpus.uniform(2, 97);
        const BigInt d = corpus.uniform(2, 97);
        auto scaled = [](const DiscreteDist& x, const BigInt& f) {
            std::vector<BigInt> w = x.weights();
            for (auto& v : w) {
                v *= f;
            }
            return DiscreteDist(x.offset(), std::move(w), x.total() * f);
        };
        ASSERT_EQ(lr_order(a, b).holds, lr_order(scaled(a, c), scaled(b, c)).holds);
        ASSERT_EQ(lr_order(a, b).holds, lr_order(scaled(a, c), scaled(b, d)).holds);
        ASSERT_EQ(lr_order(a, b).slack, lr_order(scaled(a, c), scaled(b, c)).slack);
        ASSERT_EQ(st_order(a, b).holds, st_order(scaled(a, c), scaled(b, d)).holds);
    }
}

TEST(TceConj, Examples)
{
    const BoundCheck a = check_tce_conj(HypParams(4, 2, 2));
    ASSERT_EQ(a.parts.size(), 3u);
    EXPECT_EQ(a.outcome(), Outcome::Holds);
    EXPECT_EQ(std::get<ExactRational>(a.parts[2].verdict.lhs), q(6, 5));
    EXPECT_EQ(std::get<ExactRational>(a.parts[2].verdict.rhs), q(4, 3));

    for (long n = 1; n <= 15; ++n) {
        for (long i = 1; i <= n; ++i) {
            const BoundCheck c = check_tce_conj(HypParams(n, i, 1));
            EXPECT_EQ(c.outcome(), Outcome::Holds);
            for (const auto& p : c.parts) {
                EXPECT_EQ(p.verdict.margin.sign(), 0) << p.label;
            }
        }
    }

    EXPECT_EQ(check_tce_conj(HypParams(20, 10, 4)).outcome(), Outcome::Holds);
}

TEST(TceConj, HoldsForSmallN)
{
    for (long n = 1; n <= 35; ++n) {
        for (long i = 1; i <= n; ++i) {
            for (long k = 1; k <= n; ++k) {
                ASSERT_EQ(check_tce_conj(HypParams(n, i, k)).outcome(), Outcome::Holds) << n << "," << i << "," << k;
            }
        }
    }
}

TEST(TceBinomMonotone, Examples)
{
    const BoundCheck a = check_tce_binom_monotone(2, q(1, 4), q(1, 2), 1);
    EXPECT_EQ(a.outcome(), Outcome::Holds);
    // (1 (3/8) + 2 (1/16)) / (7/16)
    EXPECT_EQ(std::get<ExactRational>(a.verdict().lhs), ExactRational((q(3, 8) + 2 * q(1, 16)) / q(7, 16)));
    EXPECT_EQ(std::get<ExactRational>(a.verdict().lhs), q(8, 7));
    EXPECT_EQ(std::get<ExactRational>(a.verdict().rhs), q(4, 3));

    const BoundCheck b = check_tce_binom_monotone(5, q(2, 5), q(2, 5), 3);
    EXPECT_EQ(b.outcome(), Outcome::Holds);
    EXPECT_EQ(b.verdict().margin.sign(), 0);

    EXPECT_EQ(check_tce_binom_monotone(4, q(1, 4), q(3, 4), 2).outcome(), Outcome::Holds);

    EXPECT_THROW(check_tce_binom_monotone(4, q(3, 4), q(1, 4), 2), InvalidParams);
    EXPECT_THROW(check_tce_binom_monotone(4, 0, q(1, 4), 2), InvalidParams);
    EXPECT_THROW(check_tce_binom_monotone(4, q(1, 4), 1, 2), InvalidParams);
    EXPECT_THROW(check_tce_binom_monotone(4, q(1, 4), q(1, 2), 5), InvalidParams);
}

TEST(TceBinomMonotone, GridOfProbabilities)
{
    for (long k = 1; k <= 12; ++k) {
        for (long a = 1; a < 10; ++a) {
            for (long b = a; b < 10; ++b) {
                for (long m = 0; m <= k; ++m) {
                    ASSERT_EQ(check_tce_binom_monotone(k, q(a, 10), q(b, 10), m).outcome(), Outcome::Holds);
                }
            }
        }
    }
}
