#ifndef HYPTAIL_BOUNDS_HPP
#define HYPTAIL_BOUNDS_HPP

#include "hyptail/bound_check.hpp"
#include "hyptail/certify.hpp"
#include "hyptail/expr.hpp"
#include "hyptail/hyp.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hyptail {

// Right-hand-side building blocks.
namespace rhs {

/// e^{-1/8} / (4 sqrt 2), the leading constant of the tail lower bound.
inline Expr tail_constant() { return exp(Expr(make_rational(-1, 8))) / (Expr(4) * sqrt(Expr(2))); }

/// 1 / (2 sqrt 2), the conjectured improvement of tail_constant().
inline Expr conjectured_tail_constant() { return Expr(1) / (Expr(2) * sqrt(Expr(2))); }

/// e^{-1/8} / (2 sqrt 2), the MAD lower-bound constant.
inline Expr mad_constant() { return exp(Expr(make_rational(-1, 8))) / (Expr(2) * sqrt(Expr(2))); }

/// sqrt((n-1)/n) sqrt(Var) / (1 + sqrt(1 + (n-1)/(n-k) Var)); requires k < n.
inline Expr tail_shape(const HypParams& p)
{
    const ExactRational var = p.variance();
    return sqrt(Expr(make_rational(p.n - 1, p.n))) * sqrt(Expr(var)) / (Expr(1) + sqrt(Expr(1) + Expr(ExactRational(make_rational(p.n - 1, p.n - p.k) * var))));
}

inline Expr theorem2(const HypParams& p) { return tail_constant() * tail_shape(p); }

inline Expr berry_esseen(const ExactRational& variance)
{
    return Expr(make_rational(1, 2)) - Expr(make_rational(5583, 10000)) / sqrt(Expr(variance));
}

inline Expr mad_lower(const HypParams& p)
{
    return mad_constant() * sqrt(Expr(make_rational(p.n - 1, p.n))) * sqrt(Expr(p.variance()));
}

inline Expr tce_upper(const HypParams& p)
{
    const ExactRational inner = ExactRational(p.variance() * make_rational(p.n - 1, p.n - p.k) + 1);
    return Expr(ExactRational(p.threshold())) + sqrt(Expr(inner));
}

/// (e^{-1/8}/2) sqrt(i(n-i)(n-k) / ((i-m)(n-i-k+m) n))
inline Expr point_mass_ratio(const HypParams& p, long m)
{
    const ExactRational q = make_rational(BigInt(p.i) * (p.n - p.i) * (p.n - p.k), BigInt(p.i - m) * (p.n - p.i - p.k + m) * p.n);
    return exp(Expr(make_rational(-1, 8))) / Expr(2) * sqrt(Expr(q));
}

/// sqrt(2 pi n) (n/e)^n e^{extra}
inline Expr robbins(long n, const ExactRational& extra)
{
    const Expr nn(n);
    return sqrt(Expr(2) * Expr::pi() * nn) * exp(nn * log(nn) - nn + Expr(extra));
}

}  // namespace rhs

namespace detail {

inline Verdict guarded(const std::function<Verdict()>& f)
{
    try {
        return f();
    } catch (const DomainError& e) {
        return not_applicable(std::string("right-hand side undefined: ") + e.what());
    }
}

// Theorem 2's hypotheses: E(H) in [1, min(i,k)-2] and (n-i)(n-k)/n > 1.
inline void theorem2_gate(Gate& g, const HypParams& p)
{
    const ExactRational mean = p.mean();
    g.require(mean >= 1, "E(H) >= 1");
    g.require(mean <= std::min(p.i, p.k) - 2, "E(H) <= min(i,k)-2");
    g.require(p.complement_mean() > 1, "(n-i)(n-k)/n > 1");
}

}  // namespace detail

/// P(H >= E(H)) >= k/n, for n >= 8k.
inline BoundCheck check_theorem1(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    detail::Gate g;
    g.require(p.n >= 8 * p.k, "n >= 8k");
    BoundCheck c = detail::make_check(BoundId::Theorem1, p, std::move(g));
    if (!detail::should_evaluate(c, opt)) {
        detail::add_skipped(c, "tail");
        return c;
    }
    detail::add_part(c, "tail", compare_exact(ctx.tail_at_mean(), Relation::GreaterEq, make_rational(p.k, p.n)));
    return c;
}

inline BoundCheck check_theorem2(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    detail::Gate g;
    detail::theorem2_gate(g, p);
    BoundCheck c = detail::make_check(BoundId::Theorem2, p, std::move(g));
    if (!detail::should_evaluate(c, opt)) {
        detail::add_skipped(c, "tail");
        return c;
    }
    detail::add_part(c, "tail", detail::guarded([&] { return certify(ctx.tail_at_mean(), Relation::GreaterEq, rhs::theorem2(p), opt.budget_bits); }));
    return c;
}

inline BoundCheck check_corollary049(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    detail::Gate g;
    g.require(p.n >= 4, "n >= 4");
    detail::theorem2_gate(g, p);
    g.require(p.variance() >= 1, "Var(H) >= 1");
    BoundCheck c = detail::make_check(BoundId::Corollary049, p, std::move(g));
    if (!detail::should_evaluate(c, opt)) {
        detail::add_skipped(c, "tail");
        return c;
    }
    detail::add_part(c, "tail", compare_exact(ctx.tail_at_mean(), Relation::GreaterEq, make_rational(49, 1000)));
    return c;
}

/// P(H >= E(H)) >= 1/2 - 0.5583/sqrt(Var(H)).
inline BoundCheck check_berry_esseen(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    const ExactRational var = p.variance();
    detail::Gate g;
    g.require(var > 0, "Var(H) > 0");
    BoundCheck c = detail::make_check(BoundId::BerryEsseen, p, std::move(g));
    if (!detail::should_evaluate(c, opt)) {
        detail::add_skipped(c, "tail");
        return c;
    }
    detail::add_part(c, "tail", detail::guarded([&] { return certify(ctx.tail_at_mean(), Relation::GreaterEq, rhs::berry_esseen(var), opt.budget_bits); }));
    return c;
}

/// Two rational sub-verdicts against X ~ Bin(k, i/n):
///   tail: P(H >= E H) >= P(X >= E X) - (k-1)/(n-1)
///   tv:   d_TV(H, X) <= (k-1)/(n-1)
inline BoundCheck check_ehm(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    detail::Gate g;
    g.require(ExactRational(make_rational(p.k * p.i, p.n) * make_rational(p.n - p.i, p.n)) >= 1, "k(i/n)((n-i)/n) >= 1");
    BoundCheck c = detail::make_check(BoundId::Ehm, p, std::move(g));
    if (!detail::should_evaluate(c, opt) || p.n == 1) {
        detail::add_skipped(c, "tail");
        detail::add_skipped(c, "tv");
        return c;
    }
    const ExactRational slack = make_rational(p.k - 1, p.n - 1);
    const ExactRational bin_tail = tail(ctx.bin(), p.mean());
    detail::add_part(c, "tail", compare_exact(ctx.tail_at_mean(), Relation::GreaterEq, ExactRational(bin_tail - slack)));
    detail::add_part(c, "tv", compare_exact(total_variation(ctx.hyp(), ctx.bin()), Relation::LessEq, slack));
    return c;
}

/// E|H - ik/n| >= e^{-1/8}/(2 sqrt 2) sqrt((n-1)/n) sqrt(Var(H)).
inline BoundCheck check_mad_lower(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    const ExactRational mean = p.mean();
    detail::Gate g;
    g.require(mean > 1, "E(H) > 1");
    g.require(mean <= std::min(p.i, p.k) - 2, "E(H) <= min(i,k)-2");
    g.require(p.complement_mean() > 1, "(n-i)(n-k)/n > 1");
    BoundCheck c = detail::make_check(BoundId::MadLower, p, std::move(g));
    if (!detail::should_evaluate(c, opt)) {
        detail::add_skipped(c, "mad");
        return c;
    }
    detail::add_part(c, "mad", detail::guarded([&] { return certify(ctx.profile().mad, Relation::GreaterEq, rhs::mad_lower(p), opt.budget_bits); }));
    return c;
}

/// E(H | H >= E H) <= ceil(E H) + sqrt(Var(H)(n-1)/(n-k) + 1); undefined at k = n.
inline BoundCheck check_tce_upper(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    detail::Gate g;
    g.require(p.k < p.n, "k < n");
    BoundCheck c = detail::make_check(BoundId::TceUpper, p, std::move(g));
    if (!detail::should_evaluate(c, opt) || p.k == p.n) {
        detail::add_skipped(c, "tce");
        return c;
    }
    detail::add_part(c, "tce", detail::guarded([&] { return certify(ctx.profile().tce_at_mean, Relation::LessEq, rhs::tce_upper(p), opt.budget_bits); }));
    return c;
}

/// P(H = m)/P(X = m) at m = ceil(ik/n) against (e^{-1/8}/2) sqrt(...).
inline BoundCheck check_pointmass_ratio(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    const long m = p.threshold();
    detail::Gate g;
    g.require(m >= 2 && m <= std::min(p.i, p.k) - 2, "ik/n in (m-1, m] with m in [2, min(i,k)-2]");
    g.require(p.complement_mean() > 1, "(n-i)(n-k)/n > 1");
    BoundCheck c = detail::make_check(BoundId::PointMassRatio, p, std::move(g));
    const bool defined = m < p.i && p.n - p.i - p.k + m > 0;
    if (!detail::should_evaluate(c, opt) || !defined) {
        detail::add_skipped(c, "ratio");
        return c;
    }
    const ExactRational ratio = ExactRational(ctx.hyp().mass(m) / ctx.bin().mass(m));
    detail::add_part(c, "ratio", detail::guarded([&] { return certify(ratio, Relation::GreaterEq, rhs::point_mass_ratio(p, m), opt.budget_bits); }));
    return c;
}

/// sqrt(2 pi n)(n/e)^n e^{1/(12n+1)} < n! < sqrt(2 pi n)(n/e)^n e^{1/(12n)}.
inline BoundCheck check_robbins(long n, const CheckOptions& opt = {})
{
    if (n < 1) {
        throw InvalidParams("check_robbins: n must be positive");
    }
    BoundCheck c;
    c.id = BoundId::Robbins;
    c.n = n;
    const ExactRational fact = factorial(n);
    detail::add_part(c, "lower", certify(fact, Relation::Greater, rhs::robbins(n, make_rational(1, 12 * n + 1)), opt.budget_bits));
    detail::add_part(c, "upper", certify(fact, Relation::Less, rhs::robbins(n, make_rational(1, 12 * n)), opt.budget_bits));
    return c;
}

/// For E(H) <= 1: SmallMean1 is P(H=0) >= P(H>=2), SmallMean2 is P(H=1) >= P(H>=2).
inline std::vector<BoundCheck> check_small_mean(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    std::vector<BoundCheck> out;
    for (BoundId id : {BoundId::SmallMean1, BoundId::SmallMean2}) {
        detail::Gate g;
        g.require(p.mean() <= 1, "E(H) <= 1");
        BoundCheck c = detail::make_check(id, p, std::move(g));
        if (!detail::should_evaluate(c, opt)) {
            detail::add_skipped(c, "mass");
        } else {
            const DiscreteDist& h = ctx.hyp();
            const long at = id == BoundId::SmallMean1 ? 0 : 1;
            detail::add_part(c, "mass", compare_exact(h.mass(at), Relation::GreaterEq, tail(h, 2)));
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// Binomial classics for X ~ Bin(k, p):
///   BerendKontorovich: E|X - kp| >= sqrt(Var(X)/2) for k >= 2, p in [1/k, 1-1/k]
///   GreenbergMohri:    P(X >= kp) >= 1/4 for p > 1/k
inline std::vector<BoundCheck> check_binom_classics(long k, const ExactRational& prob, const CheckOptions& opt = {}, const DiscreteDist* precomputed = nullptr)
{
    if (k < 1 || prob < 0 || prob > 1) {
        throw InvalidParams("check_binom_classics: need k >= 1 and p in [0, 1]");
    }
    std::optional<DiscreteDist> local;
    if (precomputed == nullptr) {
        local = bin_dist(k, prob);
        precomputed = &*local;
    }
    const DiscreteDist& x = *precomputed;
    const ExactRational mean = ExactRational(k * prob);
    const ExactRational one_over_k = make_rational(1, k);
    std::vector<BoundCheck> out;

    {
        detail::Gate g;
        g.require(k >= 2, "k >= 2");
        g.require(prob >= one_over_k && prob <= 1 - one_over_k, "p in [1/k, 1-1/k]");
        BoundCheck c;
        c.id = BoundId::BerendKontorovich;
        c.k = k;
        c.hypotheses_met = g.met();
        c.failed_hypotheses = std::move(g.failed);
        if (!detail::should_evaluate(c, opt)) {
            detail::add_skipped(c, "mad");
        } else {
            const ExactRational var_half = ExactRational(mean * (1 - prob) / 2);
            detail::add_part(c, "mad", certify(mad_direct(x, mean), Relation::GreaterEq, sqrt(Expr(var_half)), opt.budget_bits));
        }
        out.push_back(std::move(c));
    }
    {
        detail::Gate g;
        g.require(prob > one_over_k, "p > 1/k");
        BoundCheck c;
        c.id = BoundId::GreenbergMohri;
        c.k = k;
        c.hypotheses_met = g.met();
        c.failed_hypotheses = std::move(g.failed);
        if (!detail::should_evaluate(c, opt)) {
            detail::add_skipped(c, "tail");
        } else {
            detail::add_part(c, "tail", compare_exact(tail(x, mean), Relation::GreaterEq, make_rational(1, 4)));
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<BoundCheck> check_binom_classics(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    auto out = check_binom_classics(p.k, make_rational(p.i, p.n), opt, &ctx.bin());
    for (auto& c : out) {
        c.n = p.n;
        c.i = p.i;
    }
    return out;
}

/// E(X | X >= mu) <= mu + sqrt(Var(X)) when the mean mu is a median.
inline BoundCheck check_median_tce(const DiscreteDist& d, const CheckOptions& opt = {})
{
    const ExactRational mu = d.mean();
    detail::Gate g;
    const bool below = 2 * d.cdf_weight(to_long(floor(mu))) >= d.total();
    const bool above = 2 * d.tail_weight(to_long(ceil(mu))) >= d.total();
    g.require(below && above, "mean is a median");
    BoundCheck c;
    c.id = BoundId::MedianTce;
    c.hypotheses_met = g.met();
    c.failed_hypotheses = std::move(g.failed);
    if (!detail::should_evaluate(c, opt)) {
        detail::add_skipped(c, "tce");
        return c;
    }
    detail::add_part(c, "tce", certify(tce(d, mu), Relation::LessEq, Expr(mu) + sqrt(Expr(d.variance())), opt.budget_bits));
    return c;
}

/// Median-TCE check at a grid point, applied to Y ~ Bin(k, ceil(ik/n)/k),
/// whose integer mean is always a median.
inline BoundCheck check_median_tce(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    BoundCheck c = check_median_tce(bin_dist(p.k, make_rational(p.threshold(), p.k)), opt);
    c.n = p.n;
    c.i = p.i;
    c.k = p.k;
    return c;
}

/// Quarantined checks of the unproven statements: ConjHalf, ConjQuarter and
/// Theorem1at4k.
inline std::vector<BoundCheck> check_conjectures(PointContext& ctx, const CheckOptions& opt = {})
{
    const HypParams& p = ctx.params();
    std::vector<BoundCheck> out;
    {
        detail::Gate g;
        detail::theorem2_gate(g, p);
        BoundCheck c = detail::make_check(BoundId::ConjHalf, p, std::move(g));
        if (!detail::should_evaluate(c, opt)) {
            detail::add_skipped(c, "tail");
        } else {
            detail::add_part(c, "tail", detail::guarded([&] {
                return certify(ctx.tail_at_mean(), Relation::GreaterEq, rhs::conjectured_tail_constant() * rhs::tail_shape(p), opt.budget_bits);
            }));
        }
        out.push_back(std::move(c));
    }
    {
        detail::Gate g;
        g.require(p.mean() >= make_rational(1, 2), "ik/n >= 1/2");
        g.require(p.complement_mean() >= make_rational(1, 2), "(n-i)(n-k)/n >= 1/2");
        BoundCheck c = detail::make_check(BoundId::ConjQuarter, p, std::move(g));
        if (!detail::should_evaluate(c, opt)) {
            detail::add_skipped(c, "tail");
        } else {
            detail::add_part(c, "tail", compare_exact(ctx.tail_at_mean(), Relation::GreaterEq, make_rational(1, 4)));
        }
        out.push_back(std::move(c));
    }
    {
        detail::Gate g;
        g.require(p.n >= 4 * p.k, "n >= 4k");
        BoundCheck c = detail::make_check(BoundId::Theorem1at4k, p, std::move(g));
        if (!detail::should_evaluate(c, opt)) {
            detail::add_skipped(c, "tail");
        } else {
            detail::add_part(c, "tail", compare_exact(ctx.tail_at_mean(), Relation::GreaterEq, make_rational(p.k, p.n)));
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Convenience overloads taking parameters directly.
inline BoundCheck check_theorem1(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_theorem1(ctx, opt); }
inline BoundCheck check_theorem2(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_theorem2(ctx, opt); }
inline BoundCheck check_corollary049(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_corollary049(ctx, opt); }
inline BoundCheck check_berry_esseen(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_berry_esseen(ctx, opt); }
inline BoundCheck check_ehm(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_ehm(ctx, opt); }
inline BoundCheck check_mad_lower(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_mad_lower(ctx, opt); }
inline BoundCheck check_tce_upper(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_tce_upper(ctx, opt); }
inline BoundCheck check_pointmass_ratio(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_pointmass_ratio(ctx, opt); }
inline std::vector<BoundCheck> check_small_mean(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_small_mean(ctx, opt); }
inline std::vector<BoundCheck> check_conjectures(const HypParams& p, const CheckOptions& opt = {}) { PointContext ctx(p); return check_conjectures(ctx, opt); }

}  // namespace hyptail

#endif  // HYPTAIL_BOUNDS_HPP
