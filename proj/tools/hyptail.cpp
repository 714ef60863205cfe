// hyptail: command-line front end for the exact hypergeometric tail checks.
//
//   hyptail check    --n N --i I --k K
//   hyptail sweep    --n-max 150 --k-filter '<=n/8' --checks Theorem1 --out report.csv
//   hyptail optimize --n 16 --k 2
//   hyptail probe    --conjecture ConjHalf --n-max 100
//
// Exit codes: 0 success, 1 theorem-class failure, 2 invalid invocation,
// 3 I/O error.

#include "hyptail/hyptail.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTheoremFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int budget_from_env()
{
    const char* env = std::getenv("HYPTAIL_PRECISION_BITS");
    if (env == nullptr || *env == '\0') {
        return hyptail::kDefaultBudgetBits;
    }
    try {
        std::size_t used = 0;
        const int bits = std::stoi(env, &used);
        if (used != std::string(env).size() || bits < 32) {
            throw std::invalid_argument("range");
        }
        return bits;
    } catch (const std::exception&) {
        throw hyptail::InvalidSpec("HYPTAIL_PRECISION_BITS must be an integer >= 32");
    }
}

std::vector<hyptail::BoundId> parse_checks(const std::string& list)
{
    std::vector<hyptail::BoundId> out;
    if (list == "theorems" || list == "all") {
        for (auto id : hyptail::kAllBounds) {
            if (list == "all" || !hyptail::is_conjecture(id)) {
                out.push_back(id);
            }
        }
        return out;
    }
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        auto id = hyptail::parse_bound_id(item);
        if (!id) {
            throw hyptail::InvalidSpec("unknown check: " + item);
        }
        out.push_back(*id);
    }
    return out;
}

void write_output(const std::string& text, const std::string& destination)
{
    if (destination.empty() || destination == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            throw hyptail::IoError("failed writing to standard output");
        }
        return;
    }
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw hyptail::IoError("cannot open " + destination + " for writing");
    }
    out << text;
    if (!out.flush()) {
        throw hyptail::IoError("failed writing " + destination);
    }
}

void print_summary(const hyptail::SweepReport& r, std::ostream& os)
{
    os << r.report_class << " sweep n=" << r.grid.n_min << ".." << r.grid.n_max << " k:" << r.grid.k_filter << " i:" << r.grid.i_filter << "\n";
    for (const auto& t : r.totals) {
        os << "  " << t.bound_id << (t.conjecture ? " [CONJECTURE]" : "") << ": holds=" << t.holds << " fails=" << t.fails
           << " indeterminate=" << t.indeterminate << " n/a=" << t.not_applicable << "\n";
    }
    for (const auto& s : r.conjecture_stats) {
        os << "  " << s.name << " " << s.statistic << " in [" << s.lo << ", " << s.hi << "] at (n=" << s.n << ", i=" << s.i << ", k=" << s.k << ")\n";
    }
    if (!r.findings.empty()) {
        os << "findings (conjecture counterexamples, not failures): " << r.findings.size() << "\n";
        for (const auto& f : r.findings) {
            os << "  " << f.bound_id << " (" << f.n << "," << f.i << "," << f.k << ") lhs=" << f.lhs << " rhs=[" << f.rhs_lo << "," << f.rhs_hi << "]\n";
        }
    }
    if (!r.failures.empty()) {
        os << "THEOREM FAILURES: " << r.failures.size() << "\n";
    }
}

struct GridOptions {
    long n_min = 1;
    long n_max = 150;
    std::string k_filter = "all";
    std::string i_filter = "all";
    std::optional<int> precision_bits;
    std::string out = "-";
    std::string format = "csv";
    unsigned jobs = 1;
    bool all_rows = false;

    void add_to(CLI::App* app)
    {
        app->add_option("--n-min", n_min, "smallest n")->capture_default_str();
        app->add_option("--n-max", n_max, "largest n")->capture_default_str();
        app->add_option("--k-filter", k_filter, "k filter: all, <=n/D, band:A:B, =V, A..B")->capture_default_str();
        app->add_option("--i-filter", i_filter, "i filter (same syntax)")->capture_default_str();
        app->add_option("--precision-bits", precision_bits, "precision budget in bits (default $HYPTAIL_PRECISION_BITS or 1024)");
        app->add_option("--out", out, "output path, - for stdout")->capture_default_str();
        app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        app->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
        app->add_flag("--all-rows", all_rows, "emit every evaluated row, not only extremes and failures");
    }

    hyptail::GridSpec spec(std::vector<hyptail::BoundId> checks) const
    {
        hyptail::GridSpec s;
        s.n_min = n_min;
        s.n_max = n_max;
        s.k_filter = hyptail::GridFilter::parse(k_filter);
        s.i_filter = hyptail::GridFilter::parse(i_filter);
        s.checks = std::move(checks);
        s.precision_budget_bits = precision_bits ? *precision_bits : budget_from_env();
        s.keep_records = all_rows;
        return s;
    }
};

int run_check(long n, long i, long k, std::optional<int> bits, const std::string& format)
{
    hyptail::GridSpec spec;
    spec.n_min = n;
    spec.n_max = n;
    spec.k_filter = hyptail::GridFilter::exact(k);
    spec.i_filter = hyptail::GridFilter::exact(i);
    for (auto id : hyptail::kAllBounds) {
        spec.checks.push_back(id);
    }
    spec.precision_budget_bits = bits ? *bits : budget_from_env();
    spec.keep_records = true;
    const hyptail::HypParams params(n, i, k);
    const auto report = hyptail::run_sweep(spec);

    if (format == "text") {
        const auto prof = hyptail::profile(params);
        std::cout << "Hyp(n=" << n << ", i=" << i << ", k=" << k << "): mean=" << prof.mean << " var=" << prof.variance
                  << " m*=" << prof.m_star << " tail=" << prof.tail_at_mean << " mad=" << prof.mad << " tce=" << prof.tce_at_mean
                  << " median=" << prof.median << "\n";
        for (const auto& r : report.records) {
            const bool conj = r.bound_id.rfind("Conj", 0) == 0 || r.bound_id == "Theorem1at4k";
            std::cout << "  " << r.bound_id << (conj ? " [CONJECTURE]" : "") << ": " << r.status;
            if (r.hypotheses_met) {
                std::cout << "  lhs=" << r.lhs << " rhs=";
                if (r.rhs_lo == r.rhs_hi) {
                    std::cout << r.rhs_lo;
                } else {
                    std::cout << "[" << r.rhs_lo << ", " << r.rhs_hi << "]";
                }
                std::cout << " margin>=" << r.margin_lower_bound;
            }
            std::cout << "\n";
        }
    } else {
        write_output(hyptail::render(report, hyptail::parse_format(format)), "-");
    }
    return report.has_theorem_failures() ? kExitTheoremFailure : kExitOk;
}

int run_optimize(long n, long k, const std::string& format)
{
    const auto r = hyptail::optimize_smuggler(n, k);
    if (format == "json") {
        nlohmann::json j;
        j["n"] = r.n;
        j["k"] = r.k;
        std::vector<std::string> per_i;
        for (const auto& q : r.per_i) {
            per_i.push_back(hyptail::to_string(q));
        }
        j["profit_prob"] = per_i;
        j["argmax_set"] = r.argmax_set;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "i,profit_prob\n";
        for (std::size_t idx = 0; idx < r.per_i.size(); ++idx) {
            std::cout << idx + 1 << "," << hyptail::to_string(r.per_i[idx]) << "\n";
        }
        std::cout << "# argmax:";
        for (long i : r.argmax_set) {
            std::cout << " " << i;
        }
        std::cout << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of hypergeometric tail inequalities"};
    app.require_subcommand(1);

    long n = 0;
    long i = 0;
    long k = 0;
    std::optional<int> check_bits;
    std::string check_format = "text";
    auto* check = app.add_subcommand("check", "certify every bound at one (n, i, k)");
    check->add_option("--n", n, "population size")->required();
    check->add_option("--i", i, "black marbles")->required();
    check->add_option("--k", k, "sample size")->required();
    check->add_option("--precision-bits", check_bits, "precision budget in bits");
    check->add_option("--format", check_format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();

    GridOptions sweep_opts;
    std::string checks = "theorems";
    auto* sweep = app.add_subcommand("sweep", "evaluate checks over a parameter grid");
    sweep_opts.add_to(sweep);
    sweep->add_option("--checks", checks, "comma-separated bound ids, 'theorems' or 'all'")->capture_default_str();

    long opt_n = 0;
    long opt_k = 0;
    std::string opt_format = "csv";
    auto* optimize = app.add_subcommand("optimize", "smuggler optimization over i");
    optimize->add_option("--n", opt_n, "number of agents")->required();
    optimize->add_option("--k", opt_k, "number of seized agents")->required();
    optimize->add_option("--format", opt_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    GridOptions probe_opts;
    probe_opts.n_max = 100;
    std::string conjecture;
    auto* probe = app.add_subcommand("probe", "probe one conjecture over a grid");
    probe_opts.add_to(probe);
    probe->add_option("--conjecture", conjecture, "ConjHalf, ConjQuarter or Theorem1at4k")
        ->required()
        ->check(CLI::IsMember({"ConjHalf", "ConjQuarter", "Theorem1at4k"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*check) {
            return run_check(n, i, k, check_bits, check_format);
        }
        if (*optimize) {
            return run_optimize(opt_n, opt_k, opt_format);
        }
        if (*sweep) {
            const auto spec = sweep_opts.spec(parse_checks(checks));
            const auto report = hyptail::run_sweep(spec, sweep_opts.jobs);
            write_output(hyptail::render(report, hyptail::parse_format(sweep_opts.format)), sweep_opts.out);
            print_summary(report, std::cerr);
            return report.has_theorem_failures() ? kExitTheoremFailure : kExitOk;
        }
        if (*probe) {
            const auto id = *hyptail::parse_bound_id(conjecture);
            const auto report = hyptail::probe_conjecture(id, probe_opts.spec({}), probe_opts.jobs);
            write_output(hyptail::render(report, hyptail::parse_format(probe_opts.format)), probe_opts.out);
            print_summary(report, std::cerr);
            return kExitOk;
        }
    } catch (const hyptail::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const hyptail::InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hyptail::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
