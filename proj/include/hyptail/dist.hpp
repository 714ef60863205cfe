#ifndef HYPTAIL_DIST_HPP
#define HYPTAIL_DIST_HPP

#include "hyptail/binom.hpp"
#include "hyptail/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hyptail {

/// Finite law on consecutive integers offset, offset+1, ... with exact
/// masses. Stored as integer weights over a common positive total so that
/// sums, tails and moments stay in integer arithmetic; mass(j) is the
/// canonical rational weight(j)/total.
///
/// Invariants: every weight >= 0, weights sum to total, first and last
/// weights are strictly positive.
class DiscreteDist {
public:
    DiscreteDist(long offset, std::vector<BigInt> weights, BigInt total) : offset_(offset), weights_(std::move(weights)), total_(std::move(total))
    {
        normalize_support();
        BigInt sum = 0;
        for (const auto& w : weights_) {
            if (w < 0) {
                throw InvalidParams("negative mass");
            }
            sum += w;
        }
        if (total_ <= 0 || sum != total_) {
            throw InvalidParams("masses do not sum to one");
        }
    }

    static DiscreteDist from_masses(long offset, const std::vector<ExactRational>& masses)
    {
        BigInt den = 1;
        for (const auto& m : masses) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m.get_den_mpz_t());
        }
        std::vector<BigInt> weights;
        weights.reserve(masses.size());
        for (const auto& m : masses) {
            weights.emplace_back(m.get_num() * (den / m.get_den()));
        }
        return DiscreteDist(offset, std::move(weights), std::move(den));
    }

    static DiscreteDist point_mass(long at) { return DiscreteDist(at, {BigInt(1)}, BigInt(1)); }

    long offset() const { return offset_; }
    long min_value() const { return offset_; }
    long max_value() const { return offset_ + static_cast<long>(weights_.size()) - 1; }
    std::size_t size() const { return weights_.size(); }

    const std::vector<BigInt>& weights() const { return weights_; }
    const BigInt& total() const { return total_; }

    // Zero outside the support.
    const BigInt& weight(long j) const
    {
        static const BigInt zero = 0;
        if (j < min_value() || j > max_value()) {
            return zero;
        }
        return weights_[static_cast<std::size_t>(j - offset_)];
    }

    ExactRational mass(long j) const { return make_rational(weight(j), total_); }

    std::vector<ExactRational> masses() const
    {
        std::vector<ExactRational> out;
        out.reserve(weights_.size());
        for (const auto& w : weights_) {
            out.push_back(make_rational(w, total_));
        }
        return out;
    }

    // Sum of weights at values >= threshold.
    BigInt tail_weight(long threshold) const
    {
        BigInt s = 0;
        for (long j = std::max(threshold, min_value()); j <= max_value(); ++j) {
            s += weights_[static_cast<std::size_t>(j - offset_)];
        }
        return s;
    }

    // Sum of weights at values <= s.
    BigInt cdf_weight(long s) const
    {
        BigInt acc = 0;
        for (long j = min_value(); j <= std::min(s, max_value()); ++j) {
            acc += weights_[static_cast<std::size_t>(j - offset_)];
        }
        return acc;
    }

    ExactRational cdf(long s) const { return make_rational(cdf_weight(s), total_); }

    ExactRational mean() const
    {
        BigInt s = 0;
        for (std::size_t idx = 0; idx < weights_.size(); ++idx) {
            s += weights_[idx] * (offset_ + static_cast<long>(idx));
        }
        return make_rational(s, total_);
    }

    ExactRational variance() const
    {
        BigInt s1 = 0;
        BigInt s2 = 0;
        for (std::size_t idx = 0; idx < weights_.size(); ++idx) {
            const long j = offset_ + static_cast<long>(idx);
            s1 += weights_[idx] * j;
            s2 += weights_[idx] * j * j;
        }
        // (total*s2 - s1^2) / total^2
        return make_rational(total_ * s2 - s1 * s1, total_ * total_);
    }

    // Equality of laws (mass by mass), independent of the weight scaling.
    friend bool operator==(const DiscreteDist& a, const DiscreteDist& b)
    {
        if (a.offset_ != b.offset_ || a.weights_.size() != b.weights_.size()) {
            return false;
        }
        for (std::size_t idx = 0; idx < a.weights_.size(); ++idx) {
            if (a.weights_[idx] * b.total_ != b.weights_[idx] * a.total_) {
                return false;
            }
        }
        return true;
    }

private:
    void normalize_support()
    {
        std::size_t first = 0;
        while (first < weights_.size() && weights_[first] == 0) {
            ++first;
        }
        if (first == weights_.size()) {
            throw InvalidParams("distribution with no mass");
        }
        std::size_t last = weights_.size();
        while (weights_[last - 1] == 0) {
            --last;
        }
        if (first > 0 || last < weights_.size()) {
            weights_ = std::vector<BigInt>(weights_.begin() + static_cast<std::ptrdiff_t>(first), weights_.begin() + static_cast<std::ptrdiff_t>(last));
            offset_ += static_cast<long>(first);
        }
    }

    long offset_;
    std::vector<BigInt> weights_;
    BigInt total_;
};

}  // namespace hyptail

#endif  // HYPTAIL_DIST_HPP
