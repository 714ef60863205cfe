#ifndef HYPTAIL_CERTIFY_HPP
#define HYPTAIL_CERTIFY_HPP

#include "hyptail/expr.hpp"
#include "hyptail/interval.hpp"
#include "hyptail/rational.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <variant>

namespace hyptail {

enum class Relation { GreaterEq, LessEq, Greater, Less };

enum class Status { Holds, Fails, Indeterminate };

inline constexpr int kDefaultBudgetBits = 1024;
inline constexpr int kStartPrecisionBits = 64;

inline std::string_view to_string(Relation r)
{
    switch (r) {
    case Relation::GreaterEq: return ">=";
    case Relation::LessEq: return "<=";
    case Relation::Greater: return ">";
    case Relation::Less: return "<";
    }
    return "?";
}

inline std::string_view to_string(Status s)
{
    switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Indeterminate: return "Indeterminate";
    }
    return "?";
}

// One side of a certified comparison; monostate when the side was never
// evaluated (hypotheses not met).
using Side = std::variant<std::monostate, ExactRational, Interval>;

/// Outcome of comparing an exact left-hand side with a right-hand side.
///
/// Holds is only reported when the whole enclosure of the right-hand side is
/// on the correct side of the left-hand side, Fails only when it is entirely
/// on the wrong side; anything else is Indeterminate. margin is a lower bound
/// on (lhs - rhs) for >= / > and on (rhs - lhs) for <= / <.
struct Verdict {
    Status status = Status::Indeterminate;
    Relation relation = Relation::GreaterEq;
    Side lhs;
    Side rhs;
    BigFloat margin{64};
    int precision_used = 0;  // 0: decided by exact rational comparison
    std::string reason;
};

namespace detail {

inline bool satisfies(int cmp, Relation rel)
{
    switch (rel) {
    case Relation::GreaterEq: return cmp >= 0;
    case Relation::LessEq: return cmp <= 0;
    case Relation::Greater: return cmp > 0;
    case Relation::Less: return cmp < 0;
    }
    return false;
}

inline bool lower_is_lhs(Relation rel) { return rel == Relation::GreaterEq || rel == Relation::Greater; }

}  // namespace detail

/// Certified comparison of two exact rationals.
inline Verdict compare_exact(const ExactRational& lhs, Relation rel, const ExactRational& rhs)
{
    Verdict v;
    v.relation = rel;
    v.lhs = lhs;
    v.rhs = rhs;
    v.status = detail::satisfies(cmp(lhs, rhs), rel) ? Status::Holds : Status::Fails;
    const ExactRational diff = detail::lower_is_lhs(rel) ? ExactRational(lhs - rhs) : ExactRational(rhs - lhs);
    v.margin = BigFloat::from_rational(diff, kStartPrecisionBits, MPFR_RNDD);
    return v;
}

/// Certifies `lhs rel rhs_expr`. Rational right-hand sides are compared
/// exactly; otherwise the enclosure is refined at 64, 128, ... bits up to
/// budget_bits and the first decisive precision wins.
inline Verdict certify(const ExactRational& lhs, Relation rel, const Expr& rhs_expr, int budget_bits = kDefaultBudgetBits)
{
    if (budget_bits < 32) {
        throw InvalidParams("certify: budget_bits must be at least 32");
    }
    if (auto exact = exact_value(rhs_expr)) {
        return compare_exact(lhs, rel, *exact);
    }

    Verdict v;
    v.relation = rel;
    v.lhs = lhs;
    int bits = std::min(kStartPrecisionBits, budget_bits);
    while (true) {
        Interval rhs = eval_interval(rhs_expr, bits);
        if (rhs.lo.is_nan() || rhs.hi.is_nan()) {
            throw DomainError("enclosure is not a number: " + rhs_expr.to_string());
        }
        // lhs_vs_lo: sign of (lhs - rhs.lo), lhs_vs_hi: sign of (lhs - rhs.hi)
        const int lhs_vs_lo = -rhs.lo.compare(lhs);
        const int lhs_vs_hi = -rhs.hi.compare(lhs);
        BigFloat margin(bits);
        if (detail::lower_is_lhs(rel)) {
            mpfr_sub_q(margin.get(), rhs.hi.get(), lhs.get_mpq_t(), MPFR_RNDU);
            mpfr_neg(margin.get(), margin.get(), MPFR_RNDD);
        } else {
            mpfr_sub_q(margin.get(), rhs.lo.get(), lhs.get_mpq_t(), MPFR_RNDD);
        }

        Status status = Status::Indeterminate;
        // Holds for every value in the enclosure / fails for every value.
        const bool holds_everywhere = detail::lower_is_lhs(rel) ? detail::satisfies(lhs_vs_hi, rel) : detail::satisfies(lhs_vs_lo, rel);
        const bool fails_everywhere = detail::lower_is_lhs(rel) ? !detail::satisfies(lhs_vs_lo, rel) : !detail::satisfies(lhs_vs_hi, rel);
        if (holds_everywhere) {
            status = Status::Holds;
        } else if (fails_everywhere) {
            status = Status::Fails;
        }

        v.rhs = std::move(rhs);
        v.margin = std::move(margin);
        v.precision_used = bits;
        v.status = status;
        if (status != Status::Indeterminate || bits >= budget_bits) {
            break;
        }
        bits = std::min(bits * 2, budget_bits);
    }
    if (v.status == Status::Indeterminate) {
        v.reason = "precision budget of " + std::to_string(budget_bits) + " bits exhausted";
    }
    return v;
}

inline Verdict not_applicable(std::string reason)
{
    Verdict v;
    v.status = Status::Indeterminate;
    v.reason = std::move(reason);
    mpfr_set_nan(v.margin.get());
    return v;
}

}  // namespace hyptail

#endif  // HYPTAIL_CERTIFY_HPP
