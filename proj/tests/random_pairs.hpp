// Brute-force order oracles and a random corpus of small distribution pairs.
#ifndef HYPTAIL_TESTS_RANDOM_PAIRS_HPP
#define HYPTAIL_TESTS_RANDOM_PAIRS_HPP

#include "hyptail/hyptail.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

namespace random_pairs {

using namespace hyptail;

// Definitions applied literally, over every pair / threshold.
inline bool lr_brute(const DiscreteDist& a, const DiscreteDist& b)
{
    const long lo = std::min(a.min_value(), b.min_value());
    const long hi = std::max(a.max_value(), b.max_value());
    for (long m = lo; m <= hi; ++m) {
        for (long m2 = m + 1; m2 <= hi; ++m2) {
            if (a.mass(m) * b.mass(m2) < a.mass(m2) * b.mass(m)) {
                return false;
            }
        }
    }
    return true;
}

inline bool st_brute(const DiscreteDist& a, const DiscreteDist& b)
{
    const long lo = std::min(a.min_value(), b.min_value()) - 1;
    const long hi = std::max(a.max_value(), b.max_value()) + 1;
    for (long t = lo; t <= hi; ++t) {
        if (tail(a, t) > tail(b, t)) {
            return false;
        }
    }
    return true;
}

struct Corpus {
    std::mt19937_64 rng;

    explicit Corpus(std::uint64_t seed = 1234) : rng(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    std::vector<BigInt> random_weights(std::size_t len)
    {
        std::vector<BigInt> w(len);
        for (auto& x : w) {
            x = uniform(0, 3) == 0 ? 0 : uniform(1, 50);
        }
        w.front() = uniform(1, 50);
        w.back() = uniform(1, 50);
        return w;
    }

    static DiscreteDist make(long offset, std::vector<BigInt> w)
    {
        BigInt total = 0;
        for (const auto& x : w) {
            total += x;
        }
        return DiscreteDist(offset, std::move(w), total);
    }

    // A pair on supports of size <= 12; two thirds of the pairs are built
    // with a nondecreasing likelihood ratio so that lr holds often.
    std::pair<DiscreteDist, DiscreteDist> next()
    {
        const long offset = uniform(-3, 3);
        const auto len = static_cast<std::size_t>(uniform(1, 12));
        std::vector<BigInt> wa = random_weights(len);
        if (uniform(0, 2) == 0) {
            const long offset_b = offset + uniform(-2, 2);
            const auto len_b = static_cast<std::size_t>(uniform(1, 12));
            return {make(offset, wa), make(offset_b, random_weights(len_b))};
        }
        std::vector<BigInt> wb(len);
        long g = uniform(0, 2);
        for (std::size_t j = 0; j < len; ++j) {
            g += uniform(0, 3);
            wb[j] = wa[j] * g;
        }
        if (wb.back() == 0) {
            wb.back() = 1;
            wa.back() = 0;
            if (len == 1) {
                wa.back() = 1;
            }
        }
        bool any_a = false;
        for (const auto& x : wa) {
            any_a = any_a || x > 0;
        }
        if (!any_a) {
            wa.back() = 1;
        }
        return {make(offset, wa), make(offset, wb)};
    }
};

}  // namespace random_pairs

#endif  // HYPTAIL_TESTS_RANDOM_PAIRS_HPP
