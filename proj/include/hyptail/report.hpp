#ifndef HYPTAIL_REPORT_HPP
#define HYPTAIL_REPORT_HPP

#include "hyptail/sweep.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyptail {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ReportFormat { Csv, Json };

inline ReportFormat parse_format(std::string_view s)
{
    if (s == "csv" || s == "CSV") {
        return ReportFormat::Csv;
    }
    if (s == "json" || s == "JSON") {
        return ReportFormat::Json;
    }
    throw std::invalid_argument("unknown report format: " + std::string(s));
}

inline constexpr std::string_view kCsvHeader = "bound_id,n,i,k,hypotheses_met,status,lhs,rhs_lo,rhs_hi,margin_lower_bound";

inline void write_csv_row(std::ostream& out, const ReportRow& r)
{
    out << r.bound_id << ',' << r.n << ',' << r.i << ',' << r.k << ',' << (r.hypotheses_met ? "true" : "false") << ',' << r.status << ','
        << r.lhs << ',' << r.rhs_lo << ',' << r.rhs_hi << ',' << r.margin_lower_bound << '\n';
}

/// CSV body: every record when the sweep kept them, otherwise extremes,
/// theorem failures, conjecture findings and indeterminate rows, in that
/// order. None of the fields can contain a comma.
inline std::string to_csv(const SweepReport& report)
{
    std::ostringstream out;
    out << kCsvHeader << '\n';
    if (!report.records.empty()) {
        for (const auto& r : report.records) {
            write_csv_row(out, r);
        }
        return out.str();
    }
    for (const auto* rows : {&report.extremes, &report.failures, &report.findings, &report.indeterminate}) {
        for (const auto& r : *rows) {
            write_csv_row(out, r);
        }
    }
    return out.str();
}

inline void to_json(nlohmann::json& j, const ReportRow& r)
{
    j = nlohmann::json{{"bound_id", r.bound_id}, {"n", r.n}, {"i", r.i}, {"k", r.k}, {"hypotheses_met", r.hypotheses_met}, {"status", r.status},
                       {"lhs", r.lhs}, {"rhs_lo", r.rhs_lo}, {"rhs_hi", r.rhs_hi}, {"margin_lower_bound", r.margin_lower_bound}};
}

inline void from_json(const nlohmann::json& j, ReportRow& r)
{
    j.at("bound_id").get_to(r.bound_id);
    j.at("n").get_to(r.n);
    j.at("i").get_to(r.i);
    j.at("k").get_to(r.k);
    j.at("hypotheses_met").get_to(r.hypotheses_met);
    j.at("status").get_to(r.status);
    j.at("lhs").get_to(r.lhs);
    j.at("rhs_lo").get_to(r.rhs_lo);
    j.at("rhs_hi").get_to(r.rhs_hi);
    j.at("margin_lower_bound").get_to(r.margin_lower_bound);
}

inline void to_json(nlohmann::json& j, const BoundTotals& t)
{
    j = nlohmann::json{{"bound_id", t.bound_id}, {"conjecture", t.conjecture}, {"holds", t.holds}, {"fails", t.fails},
                       {"indeterminate", t.indeterminate}, {"not_applicable", t.not_applicable}};
}

inline void from_json(const nlohmann::json& j, BoundTotals& t)
{
    j.at("bound_id").get_to(t.bound_id);
    j.at("conjecture").get_to(t.conjecture);
    j.at("holds").get_to(t.holds);
    j.at("fails").get_to(t.fails);
    j.at("indeterminate").get_to(t.indeterminate);
    j.at("not_applicable").get_to(t.not_applicable);
}

inline void to_json(nlohmann::json& j, const ConjectureStat& s)
{
    j = nlohmann::json{{"name", s.name}, {"statistic", s.statistic}, {"lo", s.lo}, {"hi", s.hi}, {"n", s.n}, {"i", s.i}, {"k", s.k}};
}

inline void from_json(const nlohmann::json& j, ConjectureStat& s)
{
    j.at("name").get_to(s.name);
    j.at("statistic").get_to(s.statistic);
    j.at("lo").get_to(s.lo);
    j.at("hi").get_to(s.hi);
    j.at("n").get_to(s.n);
    j.at("i").get_to(s.i);
    j.at("k").get_to(s.k);
}

inline void to_json(nlohmann::json& j, const GridEcho& g)
{
    j = nlohmann::json{{"n_min", g.n_min}, {"n_max", g.n_max}, {"k_filter", g.k_filter}, {"i_filter", g.i_filter}, {"checks", g.checks},
                       {"precision_budget_bits", g.precision_budget_bits}};
}

inline void from_json(const nlohmann::json& j, GridEcho& g)
{
    j.at("n_min").get_to(g.n_min);
    j.at("n_max").get_to(g.n_max);
    j.at("k_filter").get_to(g.k_filter);
    j.at("i_filter").get_to(g.i_filter);
    j.at("checks").get_to(g.checks);
    j.at("precision_budget_bits").get_to(g.precision_budget_bits);
}

inline void to_json(nlohmann::json& j, const SweepReport& r)
{
    j = nlohmann::json{{"report_class", r.report_class},
                       {"grid", r.grid},
                       {"totals", r.totals},
                       {"extremes", r.extremes},
                       {"failures", r.failures},
                       {"findings", r.findings},
                       {"indeterminate", r.indeterminate},
                       {"conjecture_stats", r.conjecture_stats},
                       {"records", r.records}};
}

inline void from_json(const nlohmann::json& j, SweepReport& r)
{
    j.at("report_class").get_to(r.report_class);
    j.at("grid").get_to(r.grid);
    j.at("totals").get_to(r.totals);
    j.at("extremes").get_to(r.extremes);
    j.at("failures").get_to(r.failures);
    j.at("findings").get_to(r.findings);
    j.at("indeterminate").get_to(r.indeterminate);
    j.at("conjecture_stats").get_to(r.conjecture_stats);
    j.at("records").get_to(r.records);
}

inline std::string to_json_text(const SweepReport& report) { return nlohmann::json(report).dump(2) + "\n"; }

inline SweepReport parse_json_report(std::string_view text) { return nlohmann::json::parse(text).get<SweepReport>(); }

inline std::string render(const SweepReport& report, ReportFormat format)
{
    return format == ReportFormat::Csv ? to_csv(report) : to_json_text(report);
}

/// Writes the report to `destination`; throws IoError when the file cannot
/// be written.
inline void emit_report(const SweepReport& report, ReportFormat format, const std::string& destination)
{
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + destination + " for writing");
    }
    out << render(report, format);
    out.flush();
    if (!out) {
        throw IoError("failed writing " + destination);
    }
}

}  // namespace hyptail

#endif  // HYPTAIL_REPORT_HPP
