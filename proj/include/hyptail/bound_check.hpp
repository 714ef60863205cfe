#ifndef HYPTAIL_BOUND_CHECK_HPP
#define HYPTAIL_BOUND_CHECK_HPP

#include "hyptail/certify.hpp"
#include "hyptail/hyp.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyptail {

enum class BoundId {
    Theorem1,
    Theorem2,
    Corollary049,
    BerryEsseen,
    Ehm,
    MadLower,
    TceUpper,
    PointMassRatio,
    Robbins,
    SmallMean1,
    SmallMean2,
    BerendKontorovich,
    GreenbergMohri,
    MedianTce,
    TceConj,
    TceBinomMonotone,
    ConjHalf,
    ConjQuarter,
    Theorem1at4k,
};

inline constexpr std::array<BoundId, 19> kAllBounds{
    BoundId::Theorem1, BoundId::Theorem2, BoundId::Corollary049, BoundId::BerryEsseen, BoundId::Ehm,
    BoundId::MadLower, BoundId::TceUpper, BoundId::PointMassRatio, BoundId::Robbins, BoundId::SmallMean1,
    BoundId::SmallMean2, BoundId::BerendKontorovich, BoundId::GreenbergMohri, BoundId::MedianTce, BoundId::TceConj,
    BoundId::TceBinomMonotone, BoundId::ConjHalf, BoundId::ConjQuarter, BoundId::Theorem1at4k,
};

inline std::string_view to_string(BoundId id)
{
    switch (id) {
    case BoundId::Theorem1: return "Theorem1";
    case BoundId::Theorem2: return "Theorem2";
    case BoundId::Corollary049: return "Corollary049";
    case BoundId::BerryEsseen: return "BerryEsseen";
    case BoundId::Ehm: return "Ehm";
    case BoundId::MadLower: return "MadLower";
    case BoundId::TceUpper: return "TceUpper";
    case BoundId::PointMassRatio: return "PointMassRatio";
    case BoundId::Robbins: return "Robbins";
    case BoundId::SmallMean1: return "SmallMean1";
    case BoundId::SmallMean2: return "SmallMean2";
    case BoundId::BerendKontorovich: return "BerendKontorovich";
    case BoundId::GreenbergMohri: return "GreenbergMohri";
    case BoundId::MedianTce: return "MedianTce";
    case BoundId::TceConj: return "TceConj";
    case BoundId::TceBinomMonotone: return "TceBinomMonotone";
    case BoundId::ConjHalf: return "ConjHalf";
    case BoundId::ConjQuarter: return "ConjQuarter";
    case BoundId::Theorem1at4k: return "Theorem1at4k";
    }
    return "?";
}

inline std::optional<BoundId> parse_bound_id(std::string_view name)
{
    for (BoundId id : kAllBounds) {
        if (to_string(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

inline bool is_conjecture(BoundId id)
{
    return id == BoundId::ConjHalf || id == BoundId::ConjQuarter || id == BoundId::Theorem1at4k;
}

// Checks that only involve rational quantities; their verdicts are never
// Indeterminate.
inline bool is_rational_only(BoundId id)
{
    switch (id) {
    case BoundId::Theorem1:
    case BoundId::Ehm:
    case BoundId::Corollary049:
    case BoundId::SmallMean1:
    case BoundId::SmallMean2:
    case BoundId::ConjQuarter:
    case BoundId::Theorem1at4k:
    case BoundId::GreenbergMohri:
    case BoundId::TceConj:
    case BoundId::TceBinomMonotone: return true;
    default: return false;
    }
}

enum class Outcome { Holds, Fails, Indeterminate, NotApplicable };

inline std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::Holds: return "Holds";
    case Outcome::Fails: return "Fails";
    case Outcome::Indeterminate: return "Indeterminate";
    case Outcome::NotApplicable: return "NotApplicable";
    }
    return "?";
}

/// Result of certifying one inequality at one parameter point. Most bounds
/// have a single part; Ehm, Robbins and TceConj carry one labelled verdict
/// per sub-inequality.
struct BoundCheck {
    struct Part {
        std::string label;
        Verdict verdict;
    };

    BoundId id = BoundId::Theorem1;
    // Coordinates of the point: (n, i, k) for hypergeometric checks,
    // (n, i, k) with p = i/n for binomial checks run off a grid, (n, 0, 0)
    // for Robbins. Zero when not meaningful.
    long n = 0;
    long i = 0;
    long k = 0;
    bool hypotheses_met = true;
    std::vector<std::string> failed_hypotheses;
    std::vector<Part> parts;

    bool conjecture() const { return is_conjecture(id); }

    const Verdict& verdict() const { return parts.front().verdict; }

    Outcome outcome() const
    {
        if (!hypotheses_met) {
            return Outcome::NotApplicable;
        }
        bool undecided = false;
        for (const auto& p : parts) {
            if (p.verdict.status == Status::Fails) {
                return Outcome::Fails;
            }
            undecided = undecided || p.verdict.status == Status::Indeterminate;
        }
        return undecided ? Outcome::Indeterminate : Outcome::Holds;
    }

    // Smallest margin over the parts.
    BigFloat margin() const
    {
        BigFloat m = parts.front().verdict.margin;
        for (const auto& p : parts) {
            if (p.verdict.margin < m) {
                m = p.verdict.margin;
            }
        }
        return m;
    }
};

struct CheckOptions {
    int budget_bits = kDefaultBudgetBits;
    // When false, the verdict is computed even if the hypotheses fail
    // (hypotheses_met still reports the truth).
    bool enforce_hypotheses = true;
};

/// Lazily computed quantities shared by all checks at one grid point. Not
/// thread-safe; one context per worker.
class PointContext {
public:
    explicit PointContext(const HypParams& p) : params_(p) {}

    const HypParams& params() const { return params_; }

    const DiscreteDist& hyp()
    {
        if (!hyp_) {
            hyp_ = hyp_dist(params_);
        }
        return *hyp_;
    }

    const HypProfile& profile()
    {
        if (!profile_) {
            profile_ = hyptail::profile(params_, hyp());
        }
        return *profile_;
    }

    // X ~ Bin(k, i/n)
    const DiscreteDist& bin()
    {
        if (!bin_) {
            bin_ = bin_dist(params_.k, make_rational(params_.i, params_.n));
        }
        return *bin_;
    }

    const ExactRational& tail_at_mean() { return profile().tail_at_mean; }

private:
    HypParams params_;
    std::optional<DiscreteDist> hyp_;
    std::optional<HypProfile> profile_;
    std::optional<DiscreteDist> bin_;
};

namespace detail {

struct Gate {
    std::vector<std::string> failed;
    void require(bool ok, std::string what)
    {
        if (!ok) {
            failed.push_back(std::move(what));
        }
    }
    bool met() const { return failed.empty(); }
};

inline BoundCheck make_check(BoundId id, const HypParams& p, Gate gate)
{
    BoundCheck c;
    c.id = id;
    c.n = p.n;
    c.i = p.i;
    c.k = p.k;
    c.hypotheses_met = gate.met();
    c.failed_hypotheses = std::move(gate.failed);
    return c;
}

inline std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        out += out.empty() ? s : "; " + s;
    }
    return out;
}

// Evaluate when hypotheses hold or enforcement is off.
inline bool should_evaluate(const BoundCheck& c, const CheckOptions& opt) { return c.hypotheses_met || !opt.enforce_hypotheses; }

inline void add_part(BoundCheck& c, std::string label, Verdict v) { c.parts.push_back({std::move(label), std::move(v)}); }

inline void add_skipped(BoundCheck& c, std::string label) { add_part(c, std::move(label), not_applicable("hypotheses not met: " + join(c.failed_hypotheses))); }

}  // namespace detail

}  // namespace hyptail

#endif  // HYPTAIL_BOUND_CHECK_HPP
