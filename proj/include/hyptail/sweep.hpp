#ifndef HYPTAIL_SWEEP_HPP
#define HYPTAIL_SWEEP_HPP

#include "hyptail/bound_check.hpp"
#include "hyptail/bounds.hpp"
#include "hyptail/orders.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

namespace hyptail {

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Predicate on a grid coordinate x (k or i) given n.
///   "all"         every x in [1, n]
///   "<=n/D"       D*x <= n
///   "band:A:B"    A*x <= n < B*x
///   "=V"          x == V
///   "A..B"        A <= x <= B
class GridFilter {
public:
    enum class Kind { All, MaxFraction, Band, Exact, Range };

    GridFilter() = default;

    static GridFilter all() { return {}; }
    static GridFilter max_fraction(long d) { return GridFilter(Kind::MaxFraction, d, 0); }
    static GridFilter band(long a, long b) { return GridFilter(Kind::Band, a, b); }
    static GridFilter exact(long v) { return GridFilter(Kind::Exact, v, 0); }
    static GridFilter range(long a, long b) { return GridFilter(Kind::Range, a, b); }

    static GridFilter parse(std::string_view text)
    {
        auto number = [&](std::string_view s) {
            long v = 0;
            const auto* end = s.data() + s.size();
            auto [ptr, ec] = std::from_chars(s.data(), end, v);
            if (ec != std::errc() || ptr != end) {
                throw InvalidSpec("bad filter descriptor: " + std::string(text));
            }
            return v;
        };
        if (text == "all") {
            return all();
        }
        if (text.rfind("<=n/", 0) == 0) {
            const long d = number(text.substr(4));
            if (d < 1) {
                throw InvalidSpec("filter divisor must be positive: " + std::string(text));
            }
            return max_fraction(d);
        }
        if (text.rfind("band:", 0) == 0) {
            const auto rest = text.substr(5);
            const auto colon = rest.find(':');
            if (colon == std::string_view::npos) {
                throw InvalidSpec("bad band filter: " + std::string(text));
            }
            return band(number(rest.substr(0, colon)), number(rest.substr(colon + 1)));
        }
        if (text.rfind('=', 0) == 0) {
            return exact(number(text.substr(1)));
        }
        if (const auto dots = text.find(".."); dots != std::string_view::npos) {
            return range(number(text.substr(0, dots)), number(text.substr(dots + 2)));
        }
        throw InvalidSpec("bad filter descriptor: " + std::string(text));
    }

    bool accepts(long x, long n) const
    {
        switch (kind_) {
        case Kind::All: return true;
        case Kind::MaxFraction: return a_ * x <= n;
        case Kind::Band: return a_ * x <= n && n < b_ * x;
        case Kind::Exact: return x == a_;
        case Kind::Range: return a_ <= x && x <= b_;
        }
        return false;
    }

    std::string to_string() const
    {
        switch (kind_) {
        case Kind::All: return "all";
        case Kind::MaxFraction: return "<=n/" + std::to_string(a_);
        case Kind::Band: return "band:" + std::to_string(a_) + ":" + std::to_string(b_);
        case Kind::Exact: return "=" + std::to_string(a_);
        case Kind::Range: return std::to_string(a_) + ".." + std::to_string(b_);
        }
        return "?";
    }

private:
    GridFilter(Kind kind, long a, long b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_ = Kind::All;
    long a_ = 0;
    long b_ = 0;
};

struct GridSpec {
    long n_min = 1;
    long n_max = 0;
    GridFilter k_filter;
    GridFilter i_filter;
    std::vector<BoundId> checks;
    int precision_budget_bits = kDefaultBudgetBits;
    // Keep one row per evaluated (point, check part) in SweepReport::records.
    bool keep_records = false;
    std::size_t extremes_per_bound = 20;
};

struct ReportRow {
    std::string bound_id;
    long n = 0;
    long i = 0;
    long k = 0;
    bool hypotheses_met = false;
    std::string status;
    std::string lhs;
    std::string rhs_lo;
    std::string rhs_hi;
    std::string margin_lower_bound;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct BoundTotals {
    std::string bound_id;
    bool conjecture = false;
    std::uint64_t holds = 0;
    std::uint64_t fails = 0;
    std::uint64_t indeterminate = 0;
    std::uint64_t not_applicable = 0;

    std::uint64_t total() const { return holds + fails + indeterminate + not_applicable; }

    friend bool operator==(const BoundTotals&, const BoundTotals&) = default;
};

/// Grid-wide extremum of a conjecture statistic, enclosed in [lo, hi], with
/// the point attaining the lower endpoint.
struct ConjectureStat {
    std::string name;
    std::string statistic;
    std::string lo;
    std::string hi;
    long n = 0;
    long i = 0;
    long k = 0;

    friend bool operator==(const ConjectureStat&, const ConjectureStat&) = default;
};

struct GridEcho {
    long n_min = 1;
    long n_max = 0;
    std::string k_filter = "all";
    std::string i_filter = "all";
    std::vector<std::string> checks;
    int precision_budget_bits = kDefaultBudgetBits;

    friend bool operator==(const GridEcho&, const GridEcho&) = default;
};

struct SweepReport {
    std::string report_class;  // THEOREM, CONJECTURE or MIXED
    GridEcho grid;
    std::vector<BoundTotals> totals;
    std::vector<ReportRow> extremes;       // per bound, smallest nonnegative margins
    std::vector<ReportRow> failures;       // theorem-class Fails
    std::vector<ReportRow> findings;       // conjecture-class Fails
    std::vector<ReportRow> indeterminate;  // hypotheses met but undecided
    std::vector<ConjectureStat> conjecture_stats;
    std::vector<ReportRow> records;

    bool has_theorem_failures() const { return !failures.empty(); }

    const BoundTotals* totals_for(BoundId id) const
    {
        for (const auto& t : totals) {
            if (t.bound_id == to_string(id)) {
                return &t;
            }
        }
        return nullptr;
    }

    friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

// Rows for each part of a check.
inline std::vector<ReportRow> to_rows(const BoundCheck& c)
{
    auto side = [](const Side& s, bool upper) -> std::string {
        if (const auto* q = std::get_if<ExactRational>(&s)) {
            return to_string(*q);
        }
        if (const auto* iv = std::get_if<Interval>(&s)) {
            return upper ? iv->hi.to_string() : iv->lo.to_string();
        }
        return "";
    };
    std::vector<ReportRow> rows;
    for (const auto& part : c.parts) {
        ReportRow r;
        r.bound_id = std::string(to_string(c.id));
        if (c.parts.size() > 1) {
            r.bound_id += "." + part.label;
        }
        r.n = c.n;
        r.i = c.i;
        r.k = c.k;
        r.hypotheses_met = c.hypotheses_met;
        r.status = c.hypotheses_met ? std::string(to_string(part.verdict.status)) : "NotApplicable";
        if (const auto* q = std::get_if<ExactRational>(&part.verdict.lhs)) {
            r.lhs = to_string(*q);
        } else if (const auto* iv = std::get_if<Interval>(&part.verdict.lhs)) {
            r.lhs = "[" + iv->lo.to_string() + "," + iv->hi.to_string() + "]";
        }
        r.rhs_lo = side(part.verdict.rhs, false);
        r.rhs_hi = side(part.verdict.rhs, true);
        r.margin_lower_bound = part.verdict.margin.is_nan() ? "" : part.verdict.margin.to_string();
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Every check registered under `id` at one grid point.
inline std::vector<BoundCheck> evaluate(BoundId id, PointContext& ctx, const CheckOptions& opt)
{
    switch (id) {
    case BoundId::Theorem1: return {check_theorem1(ctx, opt)};
    case BoundId::Theorem2: return {check_theorem2(ctx, opt)};
    case BoundId::Corollary049: return {check_corollary049(ctx, opt)};
    case BoundId::BerryEsseen: return {check_berry_esseen(ctx, opt)};
    case BoundId::Ehm: return {check_ehm(ctx, opt)};
    case BoundId::MadLower: return {check_mad_lower(ctx, opt)};
    case BoundId::TceUpper: return {check_tce_upper(ctx, opt)};
    case BoundId::PointMassRatio: return {check_pointmass_ratio(ctx, opt)};
    case BoundId::Robbins: return {check_robbins(ctx.params().n, opt)};
    case BoundId::SmallMean1: return {check_small_mean(ctx, opt).at(0)};
    case BoundId::SmallMean2: return {check_small_mean(ctx, opt).at(1)};
    case BoundId::BerendKontorovich: return {check_binom_classics(ctx, opt).at(0)};
    case BoundId::GreenbergMohri: return {check_binom_classics(ctx, opt).at(1)};
    case BoundId::MedianTce: return {check_median_tce(ctx, opt)};
    case BoundId::TceConj: return {check_tce_conj(ctx, opt)};
    case BoundId::TceBinomMonotone: return {check_tce_binom_monotone(ctx, opt)};
    case BoundId::ConjHalf: return {check_conjectures(ctx, opt).at(0)};
    case BoundId::ConjQuarter: return {check_conjectures(ctx, opt).at(1)};
    case BoundId::Theorem1at4k: return {check_conjectures(ctx, opt).at(2)};
    }
    return {};
}

/// Every bound applicable to a single triple (the CLI `check` command).
inline std::vector<BoundCheck> check_all(const HypParams& p, const CheckOptions& opt = {})
{
    PointContext ctx(p);
    std::vector<BoundCheck> out;
    for (BoundId id : kAllBounds) {
        for (auto& c : evaluate(id, ctx, opt)) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

namespace detail {

inline constexpr std::uint64_t kMaxEvaluations = 200'000'000;

struct Candidate {
    BigFloat margin;
    long n = 0;
    long k = 0;
    long i = 0;
    BoundCheck check;
};

inline bool candidate_less(const Candidate& a, const Candidate& b)
{
    if (a.margin < b.margin) {
        return true;
    }
    if (b.margin < a.margin) {
        return false;
    }
    return std::tie(a.n, a.k, a.i) < std::tie(b.n, b.k, b.i);
}

inline void keep_smallest(std::vector<Candidate>& v, std::size_t limit)
{
    if (v.size() > limit) {
        std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(limit), v.end(), candidate_less);
        v.resize(limit);
    } else {
        std::sort(v.begin(), v.end(), candidate_less);
    }
}

struct ExactMin {
    std::optional<ExactRational> value;
    long n = 0, i = 0, k = 0;

    void offer(const ExactRational& q, const HypParams& p)
    {
        if (!value || q < *value) {
            value = q;
            n = p.n;
            i = p.i;
            k = p.k;
        }
    }
    void merge(const ExactMin& o)
    {
        if (o.value && (!value || *o.value < *value)) {
            *this = o;
        }
    }
};

struct IntervalMin {
    std::optional<BigFloat> lo;
    std::optional<BigFloat> hi;
    long n = 0, i = 0, k = 0;

    void offer(const Interval& iv, long pn, long pi, long pk)
    {
        if (!lo || iv.lo < *lo) {
            lo = iv.lo;
            n = pn;
            i = pi;
            k = pk;
        }
        if (!hi || iv.hi < *hi) {
            hi = iv.hi;
        }
    }
    void merge(const IntervalMin& o)
    {
        if (o.lo && (!lo || *o.lo < *lo)) {
            lo = o.lo;
            n = o.n;
            i = o.i;
            k = o.k;
        }
        if (o.hi && (!hi || *o.hi < *hi)) {
            hi = o.hi;
        }
    }
};

// Results of one n-slice of the grid.
struct Partial {
    std::vector<std::array<std::uint64_t, 4>> counts;  // per requested check
    std::vector<std::vector<Candidate>> extremes;
    // Largest margin still kept once extremes[slot] has been pruned.
    std::vector<std::optional<BigFloat>> cutoff;
    std::vector<ReportRow> failures;
    std::vector<ReportRow> findings;
    std::vector<ReportRow> indeterminate;
    std::vector<ReportRow> records;
    IntervalMin conj_half;
    ExactMin conj_quarter;
    ExactMin theorem1_at_4k;
};

inline void append(std::vector<ReportRow>& to, const std::vector<ReportRow>& from) { to.insert(to.end(), from.begin(), from.end()); }

// tail / (sqrt((n-1)/n) sqrt(Var) / (1 + sqrt(1 + (n-1)/(n-k) Var)))
inline Interval conj_half_ratio(const ExactRational& tail_value, const HypParams& p)
{
    return eval_interval(Expr(tail_value) / rhs::tail_shape(p), 128);
}

inline void record(Partial& part, std::size_t slot, const BoundCheck& c, const GridSpec& spec)
{
    const Outcome o = c.outcome();
    part.counts[slot][static_cast<std::size_t>(o)] += 1;
    if (spec.keep_records) {
        append(part.records, to_rows(c));
    }
    switch (o) {
    case Outcome::Fails: append(c.conjecture() ? part.findings : part.failures, to_rows(c)); break;
    case Outcome::Indeterminate: append(part.indeterminate, to_rows(c)); break;
    case Outcome::Holds: {
        BigFloat m = c.margin();
        auto& kept = part.extremes[slot];
        const auto& cut = part.cutoff[slot];
        if (m.sign() < 0 || spec.extremes_per_bound == 0 || (cut && *cut < m)) {
            break;
        }
        kept.push_back(Candidate{std::move(m), c.n, c.k, c.i, c});
        if (kept.size() > 4 * spec.extremes_per_bound + 64) {
            keep_smallest(kept, spec.extremes_per_bound);
            part.cutoff[slot] = kept.back().margin;
        }
        break;
    }
    case Outcome::NotApplicable: break;
    }
}

inline Partial run_slice(long n, const GridSpec& spec)
{
    const std::size_t nchecks = spec.checks.size();
    Partial part;
    part.counts.assign(nchecks, {0, 0, 0, 0});
    part.extremes.resize(nchecks);
    part.cutoff.resize(nchecks);
    const CheckOptions opt{spec.precision_budget_bits, true};

    bool any_point = false;
    for (long k = 1; k <= n; ++k) {
        if (!spec.k_filter.accepts(k, n)) {
            continue;
        }
        for (long i = 1; i <= n; ++i) {
            if (!spec.i_filter.accepts(i, n)) {
                continue;
            }
            any_point = true;
            const HypParams p(n, i, k);
            PointContext ctx(p);
            for (std::size_t slot = 0; slot < nchecks; ++slot) {
                const BoundId id = spec.checks[slot];
                if (id == BoundId::Robbins) {
                    continue;
                }
                for (const auto& c : evaluate(id, ctx, opt)) {
                    record(part, slot, c, spec);
                    if (!c.hypotheses_met) {
                        continue;
                    }
                    if (id == BoundId::ConjHalf) {
                        part.conj_half.offer(conj_half_ratio(ctx.tail_at_mean(), p), n, i, k);
                    } else if (id == BoundId::ConjQuarter) {
                        part.conj_quarter.offer(ctx.tail_at_mean(), p);
                    } else if (id == BoundId::Theorem1at4k) {
                        part.theorem1_at_4k.offer(ExactRational(ctx.tail_at_mean() - make_rational(k, n)), p);
                    }
                }
            }
        }
    }
    // Robbins depends on n only: one evaluation per n that has grid points.
    if (any_point) {
        for (std::size_t slot = 0; slot < nchecks; ++slot) {
            if (spec.checks[slot] == BoundId::Robbins) {
                record(part, slot, check_robbins(n, opt), spec);
            }
        }
    }
    for (auto& e : part.extremes) {
        keep_smallest(e, spec.extremes_per_bound);
    }
    return part;
}

inline std::uint64_t count_evaluations(const GridSpec& spec)
{
    std::uint64_t points = 0;
    for (long n = spec.n_min; n <= spec.n_max; ++n) {
        std::uint64_t ks = 0;
        std::uint64_t is = 0;
        for (long x = 1; x <= n; ++x) {
            ks += spec.k_filter.accepts(x, n) ? 1 : 0;
            is += spec.i_filter.accepts(x, n) ? 1 : 0;
        }
        points += ks * is;
        if (points * std::max<std::size_t>(spec.checks.size(), 1) > kMaxEvaluations) {
            break;
        }
    }
    return points * std::max<std::size_t>(spec.checks.size(), 1);
}

inline std::string report_class_of(const std::vector<BoundId>& checks)
{
    const auto conj = std::count_if(checks.begin(), checks.end(), is_conjecture);
    if (conj == 0) {
        return "THEOREM";
    }
    return conj == static_cast<long>(checks.size()) ? "CONJECTURE" : "MIXED";
}

}  // namespace detail

inline void validate(const GridSpec& spec)
{
    if (spec.n_min < 1) {
        throw InvalidSpec("n range must start at 1 or above");
    }
    if (spec.precision_budget_bits < 32) {
        throw InvalidSpec("precision budget must be at least 32 bits");
    }
    for (std::size_t a = 0; a < spec.checks.size(); ++a) {
        for (std::size_t b = a + 1; b < spec.checks.size(); ++b) {
            if (spec.checks[a] == spec.checks[b]) {
                throw InvalidSpec("duplicate check " + std::string(to_string(spec.checks[a])));
            }
        }
    }
    const auto evaluations = detail::count_evaluations(spec);
    if (evaluations > detail::kMaxEvaluations) {
        throw InvalidSpec("grid too large: more than " + std::to_string(detail::kMaxEvaluations) + " (point, check) evaluations requested");
    }
}

/// Evaluates every requested check at every grid point. Slices (one per n)
/// run on `workers` threads; results are merged in (n, k, i) order, so the
/// report does not depend on the worker count.
inline SweepReport run_sweep(const GridSpec& spec, unsigned workers = 1)
{
    validate(spec);
    const std::size_t nchecks = spec.checks.size();

    SweepReport report;
    report.report_class = detail::report_class_of(spec.checks);
    report.grid.n_min = spec.n_min;
    report.grid.n_max = spec.n_max;
    report.grid.k_filter = spec.k_filter.to_string();
    report.grid.i_filter = spec.i_filter.to_string();
    report.grid.precision_budget_bits = spec.precision_budget_bits;
    for (BoundId id : spec.checks) {
        report.grid.checks.emplace_back(to_string(id));
    }

    std::vector<long> ns;
    for (long n = spec.n_min; n <= spec.n_max; ++n) {
        ns.push_back(n);
    }
    std::vector<std::optional<detail::Partial>> partials(ns.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= ns.size()) {
                return;
            }
            try {
                partials[idx] = detail::run_slice(ns[idx], spec);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(ns.size());
            }
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    std::vector<std::array<std::uint64_t, 4>> counts(nchecks, {0, 0, 0, 0});
    std::vector<std::vector<detail::Candidate>> extremes(nchecks);
    detail::IntervalMin conj_half;
    detail::ExactMin conj_quarter;
    detail::ExactMin theorem1_at_4k;
    for (auto& part : partials) {
        for (std::size_t s = 0; s < nchecks; ++s) {
            for (std::size_t o = 0; o < 4; ++o) {
                counts[s][o] += part->counts[s][o];
            }
            for (auto& c : part->extremes[s]) {
                extremes[s].push_back(std::move(c));
            }
            detail::keep_smallest(extremes[s], spec.extremes_per_bound);
        }
        detail::append(report.failures, part->failures);
        detail::append(report.findings, part->findings);
        detail::append(report.indeterminate, part->indeterminate);
        detail::append(report.records, part->records);
        conj_half.merge(part->conj_half);
        conj_quarter.merge(part->conj_quarter);
        theorem1_at_4k.merge(part->theorem1_at_4k);
    }

    for (std::size_t s = 0; s < nchecks; ++s) {
        const BoundId id = spec.checks[s];
        BoundTotals t;
        t.bound_id = std::string(to_string(id));
        t.conjecture = is_conjecture(id);
        t.holds = counts[s][static_cast<std::size_t>(Outcome::Holds)];
        t.fails = counts[s][static_cast<std::size_t>(Outcome::Fails)];
        t.indeterminate = counts[s][static_cast<std::size_t>(Outcome::Indeterminate)];
        t.not_applicable = counts[s][static_cast<std::size_t>(Outcome::NotApplicable)];
        report.totals.push_back(std::move(t));
        for (const auto& c : extremes[s]) {
            detail::append(report.extremes, to_rows(c.check));
        }
    }

    for (BoundId id : spec.checks) {
        if (id == BoundId::ConjHalf && conj_half.lo) {
            report.conjecture_stats.push_back({"ConjHalf", "min tail/(sqrt((n-1)/n)*sqrt(Var)/(1+sqrt(1+(n-1)/(n-k)*Var)))",
                                               conj_half.lo->to_string(), conj_half.hi->to_string(), conj_half.n, conj_half.i, conj_half.k});
        } else if (id == BoundId::ConjQuarter && conj_quarter.value) {
            const std::string v = to_string(*conj_quarter.value);
            report.conjecture_stats.push_back({"ConjQuarter", "min tail", v, v, conj_quarter.n, conj_quarter.i, conj_quarter.k});
        } else if (id == BoundId::Theorem1at4k && theorem1_at_4k.value) {
            const std::string v = to_string(*theorem1_at_4k.value);
            report.conjecture_stats.push_back({"Theorem1at4k", "min tail-k/n", v, v, theorem1_at_4k.n, theorem1_at_4k.i, theorem1_at_4k.k});
        }
    }
    return report;
}

/// Conjecture probe: run_sweep restricted to one quarantined check.
inline SweepReport probe_conjecture(BoundId name, GridSpec spec, unsigned workers = 1)
{
    if (!is_conjecture(name)) {
        throw InvalidSpec("not a conjecture check: " + std::string(to_string(name)));
    }
    spec.checks = {name};
    return run_sweep(spec, workers);
}

struct SmugglerResult {
    long n = 0;
    long k = 0;
    std::vector<ExactRational> per_i;  // per_i[i-1] = 1 - P(H_i >= ik/n)
    std::vector<long> argmax_set;
};

/// Probability that the smuggler's operation stays profitable, for each
/// number i of loaded agents, and the set of maximizing i.
inline SmugglerResult optimize_smuggler(long n, long k)
{
    if (n < 1 || k < 1 || k > n) {
        throw InvalidParams("optimize_smuggler: need 1 <= k <= n");
    }
    SmugglerResult r;
    r.n = n;
    r.k = k;
    for (long i = 1; i <= n; ++i) {
        const HypParams p(n, i, k);
        r.per_i.push_back(ExactRational(1 - tail(hyp_dist(p), p.mean())));
    }
    const ExactRational best = *std::max_element(r.per_i.begin(), r.per_i.end());
    for (long i = 1; i <= n; ++i) {
        if (r.per_i[static_cast<std::size_t>(i - 1)] == best) {
            r.argmax_set.push_back(i);
        }
    }
    return r;
}

}  // namespace hyptail

#endif  // HYPTAIL_SWEEP_HPP
