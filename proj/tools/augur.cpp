// augur: command-line front end for the learning-augmented ski rental and
// scheduling library.
//
// Exit codes: 0 ok, 1 I/O failure, 2 usage error, 3 bound violation.

#include "augur/experiments.hpp"
#include "augur/scheduling.hpp"
#include "augur/ski_rental.hpp"
#include "augur/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

using augur::experiments::fixed;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("grid must be start:stop:step, got '" + text + "'");
    try {
        return augur::experiments::linear_grid(std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]));
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(std::string("bad grid '") + text + "': " + e.what());
    } catch (const std::exception&) {
        throw UsageError("grid values must be numbers, got '" + text + "'");
    }
}

/// Writes `body` to `path`, or stdout when path is empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    body(out);
    out.flush();
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

struct Common {
    std::string out;
    std::string format = "csv";
};

void add_output_options(CLI::App* sub, Common& c) {
    sub->add_option("-o,--out", c.out, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

/// Flat key=value file; keys are long option names without dashes, '#'
/// starts a comment. Options already given on the command line win.
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        auto* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config")
            throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::ParseError& e) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

// --- ski-sweep ------------------------------------------------------------

struct SkiSweepArgs {
    Common io;
    std::string config;
    augur::experiments::SkiSweepConfig cfg;
    std::string sigma_grid;
};

void run_ski_sweep(const SkiSweepArgs& a) {
    auto cfg = a.cfg;
    if (!a.sigma_grid.empty()) cfg.sigmas = parse_grid(a.sigma_grid);
    try {
        augur::experiments::validate(cfg);
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(e.what());
    }
    const auto rows = augur::experiments::run_ski_sweep(cfg);
    emit(a.io.out, [&](std::ostream& os) {
        if (a.io.format == "json") augur::experiments::write_sweep_json(os, rows);
        else augur::experiments::write_sweep_csv(os, rows);
    });
}

// --- sched-sweep ----------------------------------------------------------

struct SchedSweepArgs {
    Common io;
    std::string config;
    augur::experiments::SchedSweepConfig cfg;
    std::string sigma_grid;
    std::string kind = "lomax";
};

void run_sched_sweep(const SchedSweepArgs& a) {
    auto cfg = a.cfg;
    if (!a.sigma_grid.empty()) cfg.sigmas = parse_grid(a.sigma_grid);
    cfg.kind = a.kind == "classic" ? augur::workloads::ParetoKind::Classic : augur::workloads::ParetoKind::Lomax;
    try {
        augur::experiments::validate(cfg);
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(e.what());
    }
    const auto rows = augur::experiments::run_scheduling_sweep(cfg);
    emit(a.io.out, [&](std::ostream& os) {
        if (a.io.format == "json") augur::experiments::write_sweep_json(os, rows);
        else augur::experiments::write_sweep_csv(os, rows);
    });
}

// --- tradeoff -------------------------------------------------------------

struct TradeoffArgs {
    Common io;
    std::int64_t b = 100;
    std::string lambda_grid = "0.05:1:0.05";
};

void run_tradeoff(const TradeoffArgs& a) {
    if (a.b < 2) throw UsageError("--b must be >= 2");
    const auto lambdas = parse_grid(a.lambda_grid);
    std::vector<augur::experiments::TradeoffRow> rows;
    try {
        rows = augur::experiments::run_tradeoff_curve(a.b, lambdas);
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(e.what());
    }
    emit(a.io.out, [&](std::ostream& os) {
        if (a.io.format == "json") augur::experiments::write_tradeoff_json(os, rows);
        else augur::experiments::write_tradeoff_csv(os, rows);
    });
}

// --- verify-bounds --------------------------------------------------------

struct VerifyArgs {
    Common io;
    std::string density = "default";
    std::uint64_t seed = augur::experiments::kDefaultSeed;
};

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

int run_verify(const VerifyArgs& a) {
    using augur::verify::Density;
    const Density d = a.density == "tiny" ? Density::Tiny : a.density == "full" ? Density::Full : Density::Default;
    auto grid = augur::verify::GridSpec::for_density(d);
    grid.seed = a.seed;
    const auto reports = augur::verify::verify_all(grid);
    emit(a.io.out, [&](std::ostream& os) {
        if (a.io.format == "json") {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& r : reports)
                arr.push_back({{"family", r.family},
                               {"points", r.points},
                               {"violations", r.violations},
                               {"max_slack", sci(r.max_slack)},
                               {"worst_point", r.worst_point}});
            os << arr.dump(1) << '\n';
        } else {
            os << "family,points,violations,max_slack,worst_point\n";
            for (const auto& r : reports)
                os << r.family << ',' << r.points << ',' << r.violations << ',' << sci(r.max_slack) << ','
                   << augur::experiments::csv_field(r.worst_point) << '\n';
        }
    });
    const auto violations = augur::verify::total_violations(reports);
    std::cerr << "checked " << reports.size() << " bound families, " << violations << " violation(s)\n";
    return violations == 0 ? kExitOk : kExitViolation;
}

// --- trace ----------------------------------------------------------------

struct TraceSkiArgs {
    std::string format = "text";
    std::int64_t b = 100;
    std::int64_t x = 1;
    double y = 0.0;
    std::string algo = "det";
    double lambda = 0.5;
};

void run_trace_ski(const TraceSkiArgs& a) {
    namespace ski = augur::ski;
    std::optional<ski::SkiInstance> inst;
    try {
        inst.emplace(a.b, a.x, a.y);
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(e.what());
    }
    ski::SkiPolicy policy;
    if (a.algo == "naive") policy = ski::SkiPolicy::naive();
    else if (a.algo == "break-even") policy = ski::SkiPolicy::break_even();
    else if (a.algo == "karlin") policy = ski::SkiPolicy::karlin();
    else if (a.algo == "det") policy = ski::SkiPolicy::deterministic(a.lambda);
    else policy = ski::SkiPolicy::randomized(a.lambda);

    const double opt = static_cast<double>(ski::ski_opt(*inst));
    nlohmann::ordered_json j;
    std::ostringstream text;
    j["problem"] = "ski";
    j["algorithm"] = std::string(ski::algorithm_name(policy.algorithm));
    j["lambda"] = policy.lambda;
    j["b"] = inst->buy_cost();
    j["x"] = inst->days();
    j["y"] = inst->predicted();
    j["eta"] = inst->error();
    try {
        if (policy.algorithm == ski::SkiAlgorithm::NaiveConsistent) {
            const auto day = ski::naive_buy_day(*inst);
            const auto cost = ski::simulate_buy_day(*inst, day);
            j["buy_day"] = day ? nlohmann::ordered_json(*day) : nlohmann::ordered_json(nullptr);
            j["cost"] = cost;
            text << (day ? "buy day " + std::to_string(*day) : std::string("never buy")) << ", cost " << cost;
        } else if (!policy.is_randomized()) {
            const auto day = policy.algorithm == ski::SkiAlgorithm::BreakEven ? ski::deterministic_buy_day(*inst, 1.0)
                                                                              : ski::deterministic_buy_day(*inst, policy.lambda);
            const auto cost = ski::simulate_buy_day(*inst, day);
            j["buy_day"] = day;
            j["cost"] = cost;
            text << "buy day " << day << ", cost " << cost;
        } else {
            const auto dist = ski::policy_distribution(*inst, policy);
            const double cost = ski::expected_cost(*inst, dist);
            j["support"] = dist.support_size();
            j["mass_first"] = dist.mass().front();
            j["mass_last"] = dist.mass().back();
            j["expected_cost"] = cost;
            text << "buy day ~ truncated geometric on 1.." << dist.support_size() << " (p[1] = "
                 << fixed(dist.mass().front(), 6) << ", p[" << dist.support_size() << "] = "
                 << fixed(dist.mass().back(), 6) << "), expected cost " << fixed(cost, 4);
        }
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(e.what());
    }
    const double cost = ski::policy_expected_cost(*inst, policy);
    j["opt"] = opt;
    j["ratio"] = cost / opt;
    text << ", OPT " << static_cast<std::int64_t>(opt) << ", ratio " << fixed(cost / opt, 6) << '\n';
    if (a.format == "json") std::cout << j.dump(1) << '\n';
    else std::cout << text.str();
}

struct TraceSchedArgs {
    std::string format = "text";
    std::string jobs;
    std::string algo = "prr";
    double lambda = 0.5;
};

augur::sched::JobSet parse_jobs(const std::string& spec) {
    std::vector<double> x, y;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("job '" + item + "' must be length:prediction");
        try {
            std::size_t used = 0;
            const std::string xs = item.substr(0, colon), ys = item.substr(colon + 1);
            x.push_back(std::stod(xs, &used));
            if (used != xs.size()) throw std::invalid_argument(xs);
            y.push_back(std::stod(ys, &used));
            if (used != ys.size()) throw std::invalid_argument(ys);
        } catch (const std::exception&) {
            throw UsageError("job '" + item + "' is not numeric length:prediction");
        }
    }
    if (x.empty()) throw UsageError("--jobs must list at least one length:prediction pair");
    try {
        return augur::sched::JobSet::from_lengths(x, y);
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

void run_trace_sched(const TraceSchedArgs& a) {
    namespace sched = augur::sched;
    const auto jobs = parse_jobs(a.jobs);
    sched::ScheduleResult res;
    const sched::ExecutorOptions opts{true};
    try {
        if (a.algo == "rr") res = sched::round_robin(jobs, opts);
        else if (a.algo == "spjf") res = sched::spjf(jobs, sched::TieBreak::IdAscending, opts);
        else if (a.algo == "sjf") res = sched::sjf_opt(jobs);
        else res = sched::prr(jobs, a.lambda, sched::TieBreak::IdAscending, opts);
    } catch (const augur::InvalidArgument& e) {
        throw UsageError(e.what());
    }
    const double opt = sched::sjf_opt(jobs).objective;

    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["problem"] = "sched";
        j["algorithm"] = a.algo;
        if (a.algo == "prr") j["lambda"] = a.lambda;
        j["eta"] = sched::prediction_error(jobs);
        auto events = nlohmann::ordered_json::array();
        for (const auto& e : res.events) {
            nlohmann::ordered_json ev;
            ev["start"] = e.start;
            ev["end"] = e.end;
            auto rates = nlohmann::ordered_json::object();
            for (const auto& [i, r] : e.rates) rates[std::to_string(jobs[i].id)] = r;
            ev["rates"] = rates;
            auto done = nlohmann::ordered_json::array();
            for (auto i : e.completed) done.push_back(jobs[i].id);
            ev["completed"] = done;
            events.push_back(ev);
        }
        j["events"] = events;
        j["completions"] = res.completion;
        j["objective"] = res.objective;
        j["opt"] = opt;
        j["ratio"] = res.objective / opt;
        std::cout << j.dump(1) << '\n';
        return;
    }
    for (const auto& e : res.events) {
        std::cout << "[" << fixed(e.start, 4) << ", " << fixed(e.end, 4) << "]";
        for (const auto& [i, r] : e.rates) std::cout << " job" << jobs[i].id << "@" << fixed(r, 4);
        std::cout << " ->";
        for (auto i : e.completed) std::cout << " job" << jobs[i].id << " done";
        std::cout << '\n';
    }
    std::cout << "completions ";
    for (std::size_t i = 0; i < res.completion.size(); ++i) std::cout << (i ? ", " : "") << fixed(res.completion[i], 4);
    std::cout << "; objective " << fixed(res.objective, 4) << "; OPT " << fixed(opt, 4) << "; ratio "
              << fixed(res.objective / opt, 6) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"augur: ski rental and non-clairvoyant scheduling with predictions"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    SkiSweepArgs ski_args;
    auto* ski = app.add_subcommand("ski-sweep", "Average competitive ratio vs. prediction noise (ski rental)");
    ski->add_option("--config", ski_args.config, "Flat key=value file; command-line flags take precedence");
    ski->add_option("--b", ski_args.cfg.b, "Buy cost")->capture_default_str();
    ski->add_option("--trials", ski_args.cfg.trials, "Trials per sigma")->capture_default_str();
    ski->add_option("--sigma-grid", ski_args.sigma_grid, "start:stop:step (default 0:4b:b/10)");
    ski->add_option("--lambda-det", ski_args.cfg.lambda_det, "Deterministic lambda in (0, 1]")->capture_default_str();
    ski->add_option("--lambda-rand", ski_args.cfg.lambda_rand, "Randomized lambda in (1/b, 1]")->capture_default_str();
    ski->add_option("--seed", ski_args.cfg.seed, "Master seed")->capture_default_str();
    ski->add_option("-j,--jobs,--threads", ski_args.cfg.threads, "Worker threads")->capture_default_str();
    ski->add_flag("--sampled", ski_args.cfg.sampled, "Score randomized algorithms by one sampled buy day");
    add_output_options(ski, ski_args.io);

    SchedSweepArgs sched_args;
    auto* sch = app.add_subcommand("sched-sweep", "Average competitive ratio vs. prediction noise (scheduling)");
    sch->add_option("--config", sched_args.config, "Flat key=value file; command-line flags take precedence");
    sch->add_option("--n", sched_args.cfg.n, "Jobs per instance")->capture_default_str();
    sch->add_option("--alpha", sched_args.cfg.alpha, "Pareto exponent (> 1)")->capture_default_str();
    sch->add_option("--scale", sched_args.cfg.scale, "Pareto scale")->capture_default_str();
    sch->add_option("--pareto-kind", sched_args.kind, "lomax or classic")
        ->check(CLI::IsMember({"lomax", "classic"}))
        ->capture_default_str();
    sch->add_option("--trials", sched_args.cfg.trials, "Trials per sigma")->capture_default_str();
    sch->add_option("--sigma-grid", sched_args.sigma_grid, "start:stop:step (default 0:2m:m/5, m = job mean)");
    sch->add_option("--lambda", sched_args.cfg.lambda, "Preferential round-robin lambda in (0, 1)")->capture_default_str();
    sch->add_option("--seed", sched_args.cfg.seed, "Master seed")->capture_default_str();
    sch->add_option("-j,--jobs,--threads", sched_args.cfg.threads, "Worker threads")->capture_default_str();
    sch->add_flag("--fixed-jobs", sched_args.cfg.fixed_jobs, "Draw one job set; resample only the noise");
    add_output_options(sch, sched_args.io);

    TradeoffArgs tr_args;
    auto* tr = app.add_subcommand("tradeoff", "Robustness vs. consistency guarantees (ski rental)");
    tr->add_option("--b", tr_args.b, "Buy cost")->capture_default_str();
    tr->add_option("--lambda-grid", tr_args.lambda_grid, "start:stop:step")->capture_default_str();
    add_output_options(tr, tr_args.io);

    VerifyArgs ver_args;
    auto* ver = app.add_subcommand("verify-bounds", "Check every competitive-ratio bound on exhaustive/random grids");
    ver->add_option("--grid-density", ver_args.density, "tiny, default or full")
        ->check(CLI::IsMember({"tiny", "default", "full"}))
        ->capture_default_str();
    ver->add_option("--seed", ver_args.seed, "Seed for the random scheduling grid")->capture_default_str();
    add_output_options(ver, ver_args.io);

    auto* trace = app.add_subcommand("trace", "Inspect one instance step by step");
    trace->require_subcommand(1);
    TraceSkiArgs ts;
    auto* trace_ski = trace->add_subcommand("ski", "Trace a ski rental decision");
    trace_ski->add_option("--b", ts.b, "Buy cost")->capture_default_str();
    trace_ski->add_option("--x", ts.x, "Actual skiing days")->required();
    trace_ski->add_option("--y", ts.y, "Predicted skiing days")->required();
    trace_ski->add_option("--algo", ts.algo, "naive, break-even, karlin, det or rand")
        ->check(CLI::IsMember({"naive", "break-even", "karlin", "det", "rand"}))
        ->capture_default_str();
    trace_ski->add_option("--lambda", ts.lambda, "Trade-off parameter")->capture_default_str();
    trace_ski->add_option("--format", ts.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    TraceSchedArgs tsc;
    auto* trace_sched = trace->add_subcommand("sched", "Trace a schedule event by event");
    trace_sched->add_option("--jobs", tsc.jobs, "Jobs as \"x:y,x:y,...\"")->required();
    trace_sched->add_option("--algo", tsc.algo, "rr, spjf, prr or sjf")
        ->check(CLI::IsMember({"rr", "spjf", "prr", "sjf"}))
        ->capture_default_str();
    trace_sched->add_option("--lambda", tsc.lambda, "Preferential round-robin lambda")->capture_default_str();
    trace_sched->add_option("--format", tsc.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*ski) {
            apply_config(ski, ski_args.config);
            run_ski_sweep(ski_args);
        } else if (*sch) {
            apply_config(sch, sched_args.config);
            run_sched_sweep(sched_args);
        } else if (*tr) {
            run_tradeoff(tr_args);
        } else if (*ver) {
            return run_verify(ver_args);
        } else if (*trace_ski) {
            run_trace_ski(ts);
        } else if (*trace_sched) {
            run_trace_sched(tsc);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const augur::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
