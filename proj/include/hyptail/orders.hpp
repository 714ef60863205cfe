#ifndef HYPTAIL_ORDERS_HPP
#define HYPTAIL_ORDERS_HPP

#include "hyptail/bound_check.hpp"
#include "hyptail/dist.hpp"
#include "hyptail/hyp.hpp"

#include <algorithm>
#include <optional>
#include <string_view>
#include <utility>

namespace hyptail {

enum class OrderKind { LikelihoodRatio, UsualStochastic };

inline std::string_view to_string(OrderKind k) { return k == OrderKind::LikelihoodRatio ? "lr" : "st"; }

/// Outcome of an order test. For st the counterexample is a threshold t with
/// P(a >= t) > P(b >= t) (second == first); for lr it is a pair m < m' with
/// P_a(m) P_b(m') < P_a(m') P_b(m).
struct OrderWitness {
    OrderKind order_kind = OrderKind::UsualStochastic;
    bool holds = true;
    std::optional<std::pair<long, long>> counterexample;
    // min over the tested conditions of the (normalized) slack; >= 0 iff holds
    ExactRational slack = 0;
};

/// a <=_st b: P(a >= t) <= P(b >= t) for every integer t in the union of the
/// supports.
inline OrderWitness st_order(const DiscreteDist& a, const DiscreteDist& b)
{
    OrderWitness w;
    w.order_kind = OrderKind::UsualStochastic;
    const long lo = std::min(a.min_value(), b.min_value());
    const long hi = std::max(a.max_value(), b.max_value());
    // Running upper tails, scanned from the top. Every slack shares the
    // denominator a.total() * b.total(), so only numerators are compared.
    BigInt ta = 0;
    BigInt tb = 0;
    BigInt diff;
    std::optional<BigInt> worst;
    std::optional<long> worst_at;
    for (long t = hi; t >= lo; --t) {
        ta += a.weight(t);
        tb += b.weight(t);
        // P(b >= t) - P(a >= t)
        diff = tb * a.total() - ta * b.total();
        if (!worst || diff < *worst) {
            worst = diff;
            worst_at = t;
        }
    }
    w.slack = make_rational(*worst, a.total() * b.total());
    w.holds = w.slack >= 0;
    if (!w.holds) {
        w.counterexample = std::make_pair(*worst_at, *worst_at);
    }
    return w;
}

/// a <=_lr b: P_a(m)/P_b(m) decreasing over the union of supports, tested as
/// P_a(m) P_b(m') >= P_a(m') P_b(m) for all m < m'.
///
/// Points where both masses vanish constrain nothing. Every other point is a
/// nonzero vector (P_a, P_b) in the closed first quadrant, and the pairwise
/// condition says its angle is nondecreasing, so consecutive remaining points
/// suffice.
inline OrderWitness lr_order(const DiscreteDist& a, const DiscreteDist& b)
{
    OrderWitness w;
    w.order_kind = OrderKind::LikelihoodRatio;
    const long lo = std::min(a.min_value(), b.min_value());
    const long hi = std::max(a.max_value(), b.max_value());
    std::optional<long> prev;
    std::optional<BigInt> worst;
    BigInt cross;
    for (long m = lo; m <= hi; ++m) {
        if (a.weight(m) == 0 && b.weight(m) == 0) {
            continue;
        }
        if (prev) {
            cross = a.weight(*prev) * b.weight(m) - a.weight(m) * b.weight(*prev);
            if (!worst || cross < *worst) {
                worst = cross;
                if (cross < 0) {
                    w.counterexample = std::make_pair(*prev, m);
                }
            }
        }
        prev = m;
    }
    w.slack = worst ? make_rational(*worst, a.total() * b.total()) : ExactRational(0);
    w.holds = w.slack >= 0;
    if (w.holds) {
        w.counterexample.reset();
    }
    return w;
}

namespace detail {

inline Verdict order_verdict(const OrderWitness& w)
{
    Verdict v = compare_exact(w.slack, Relation::GreaterEq, ExactRational(0));
    if (!w.holds && w.counterexample) {
        v.reason = std::string(to_string(w.order_kind)) + " order violated at (" + std::to_string(w.counterexample->first) + ", " +
                   std::to_string(w.counterexample->second) + ")";
    }
    return v;
}

}  // namespace detail

/// With H* = H | {H >= ik/n} and X* = X | {X >= ik/n}, X ~ Bin(k, i/n):
///   lr:  H* <=_lr X*
///   st:  H* <=_st X*
///   tce: E(H | H >= E H) <= E(X | X >= E X)
inline BoundCheck check_tce_conj(PointContext& ctx, const CheckOptions& opt = {})
{
    (void)opt;
    const HypParams& p = ctx.params();
    BoundCheck c = detail::make_check(BoundId::TceConj, p, detail::Gate{});
    const ExactRational mean = p.mean();
    const DiscreteDist hs = conditional_tail_dist(ctx.hyp(), mean);
    const DiscreteDist xs = conditional_tail_dist(ctx.bin(), mean);
    detail::add_part(c, "lr", detail::order_verdict(lr_order(hs, xs)));
    detail::add_part(c, "st", detail::order_verdict(st_order(hs, xs)));
    detail::add_part(c, "tce", compare_exact(ctx.profile().tce_at_mean, Relation::LessEq, tce(ctx.bin(), mean)));
    return c;
}

inline BoundCheck check_tce_conj(const HypParams& p, const CheckOptions& opt = {})
{
    PointContext ctx(p);
    return check_tce_conj(ctx, opt);
}

/// E(X_p | X_p >= m) <= E(X_q | X_q >= m) for 0 < p <= q < 1.
inline BoundCheck check_tce_binom_monotone(long k, const ExactRational& p, const ExactRational& q, long m)
{
    if (k < 1 || !(p > 0) || p > q || !(q < 1) || m < 0 || m > k) {
        throw InvalidParams("check_tce_binom_monotone: need 0 < p <= q < 1 and 0 <= m <= k");
    }
    BoundCheck c;
    c.id = BoundId::TceBinomMonotone;
    c.k = k;
    const ExactRational t(m);
    detail::add_part(c, "tce", compare_exact(tce(bin_dist(k, p), t), Relation::LessEq, tce(bin_dist(k, q), t)));
    return c;
}

/// Grid form: p = i/n, q = ceil(ik/n)/k, threshold m = ceil(ik/n); not
/// applicable when q = 1.
inline BoundCheck check_tce_binom_monotone(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    const long m = p.threshold();
    detail::Gate g;
    g.require(m < p.k, "ceil(ik/n) < k");
    g.require(p.i < p.n, "i < n");
    BoundCheck c = detail::make_check(BoundId::TceBinomMonotone, p, std::move(g));
    if (!c.hypotheses_met) {
        (void)opt;
        detail::add_skipped(c, "tce");
        return c;
    }
    BoundCheck inner = check_tce_binom_monotone(p.k, make_rational(p.i, p.n), make_rational(m, p.k), m);
    c.parts = std::move(inner.parts);
    return c;
}

}  // namespace hyptail

#endif  // HYPTAIL_ORDERS_HPP
