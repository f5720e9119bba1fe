#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "fmm/experiments.hpp"
#include "fmm/grid_io.hpp"
#include "fmm/marcher.hpp"
#include "fmm/speed_catalog.hpp"
#include "fmm/verify.hpp"

namespace fmm::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Flags shared by solve, oracle and verify.
struct ProblemFlags {
    std::optional<int> n;
    std::string speed;
    std::vector<std::string> speed_params;
    std::vector<std::string> boundary;
};

struct Problem {
    SpeedField field;
    BoundarySet sources;
    std::optional<SpeedModel> model;
};

void add_problem_flags(CLI::App& cmd, ProblemFlags& flags) {
    cmd.add_option("--n", flags.n, "Subdivisions per axis (inferred for file speeds)")
        ->check(CLI::Range(2, 1 << 20));
    cmd.add_option("--speed", flags.speed,
                   "constant | sin-ratio | inv-uniform | file:<path>")
        ->required();
    cmd.add_option("--speed-param", flags.speed_params, "Speed parameter k=v (repeatable)");
    cmd.add_option("--boundary", flags.boundary, "Source indices i,j[;i,j...] (repeatable)")
        ->required();
}

int parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw UsageError("cannot parse " + what + " '" + s + "'");
    }
    return v;
}

std::vector<GridIndex> parse_boundary(const std::vector<std::string>& specs) {
    std::vector<GridIndex> pts;
    for (const auto& spec : specs) {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.empty()) {
                continue;
            }
            const auto comma = item.find(',');
            if (comma == std::string::npos) {
                throw UsageError("boundary point '" + item + "' must look like i,j");
            }
            pts.push_back({parse_int(item.substr(0, comma), "boundary index"),
                           parse_int(item.substr(comma + 1), "boundary index")});
        }
    }
    return pts;
}

SpeedParams parse_speed_params(const std::vector<std::string>& kvs) {
    SpeedParams params;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("speed parameter '" + kv + "' must look like key=value");
        }
        const std::string value = kv.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) {
            throw UsageError("speed parameter value '" + value + "' is not a number");
        }
        params[kv.substr(0, eq)] = v;
    }
    return params;
}

Problem build_problem(const ProblemFlags& flags) {
    std::optional<SpeedModel> model;
    std::optional<SpeedField> field;
    if (flags.speed.rfind("file:", 0) == 0) {
        if (!flags.speed_params.empty()) {
            throw UsageError("--speed-param does not apply to file speeds");
        }
        field.emplace(load_speed_csv(flags.speed.substr(5)));
        if (flags.n && *flags.n != field->spec().n()) {
            throw UsageError("--n " + std::to_string(*flags.n) + " does not match the speed file (n=" +
                             std::to_string(field->spec().n()) + ")");
        }
    } else {
        if (!flags.n) {
            throw UsageError("--n is required unless --speed is a file");
        }
        model.emplace(flags.speed, parse_speed_params(flags.speed_params));
        field.emplace(model->build(GridSpec(*flags.n)));
    }
    BoundarySet sources(field->spec(), parse_boundary(flags.boundary));
    return {std::move(*field), std::move(sources), std::move(model)};
}

void require_writable(const std::string& out) {
    const fs::path p(out);
    fs::path dir = p.parent_path();
    if (dir.empty()) {
        dir = ".";
    }
    std::error_code ec;
    if (p.filename().empty() || !fs::is_directory(dir, ec) || ::access(dir.c_str(), W_OK) != 0 ||
        fs::is_directory(p, ec)) {
        throw UsageError("cannot write output file '" + out + "'");
    }
}

void print_metrics(std::ostream& out, const RunMetrics& m) {
    out << "cycles=" << m.cycles << " pops=" << m.pops << " stale_skips=" << m.stale_skips
        << " insertions=" << m.insertions << " reinsertions=" << m.reinsertions
        << " bucket_traversals=" << m.bucket_traversals << " comparisons=" << m.comparisons
        << " max_point_insertions=" << m.max_point_insertions
        << " mean_insertions=" << format_real(m.mean_insertions_per_point()) << '\n';
}

#ifdef FMM_NEGATIVE_CONTROL
// Test fixture: a deliberately broken solver build that shrinks the untidy
// solution below the exact one.
void corrupt(GridFunction& t) {
    for (auto& v : t.values()) {
        v *= 0.99;
    }
}
#endif

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fast marching eikonal solver with exact and untidy priority queues", "fmm"};
    app.require_subcommand(1);

    ProblemFlags solve_flags;
    std::string solve_queue = "exact";
    std::optional<int> solve_buckets;
    std::string solve_out;
    std::string solve_format = "csv";
    auto* solve = app.add_subcommand("solve", "Solve on a grid and write the solution");
    add_problem_flags(*solve, solve_flags);
    solve->add_option("--queue", solve_queue, "exact | untidy")
        ->check(CLI::IsMember({"exact", "untidy"}));
    solve->add_option("--buckets", solve_buckets, "Bucket count n_B (untidy queue)")
        ->check(CLI::PositiveNumber);
    solve->add_option("--out", solve_out, "Output path")->required();
    solve->add_option("--format", solve_format, "csv | raw")->check(CLI::IsMember({"csv", "raw"}));

    ProblemFlags oracle_flags;
    double oracle_tol = 1e-13;
    std::string oracle_out;
    std::string oracle_format = "csv";
    auto* oracle = app.add_subcommand("oracle", "Solve by fast sweeping (reference solution)");
    add_problem_flags(*oracle, oracle_flags);
    oracle->add_option("--tol", oracle_tol, "Stop when a sweep cycle changes less than this")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--out", oracle_out, "Output path")->required();
    oracle->add_option("--format", oracle_format, "csv | raw")
        ->check(CLI::IsMember({"csv", "raw"}));

    ProblemFlags verify_flags;
    int verify_buckets = 0;
    std::string verify_out;
    auto* verify = app.add_subcommand("verify", "Check untidy error bound, band width and oracle");
    add_problem_flags(*verify, verify_flags);
    verify->add_option("--buckets", verify_buckets, "Bucket count n_B")
        ->required()
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", verify_out, "Also write the report row as CSV");

    Fig1Config fig1_cfg;
    std::string fig1_out;
    bool fig1_sampled = false;
    auto* fig1 = app.add_subcommand("fig1", "Relative error vs speed ratio and bucket count");
    fig1->add_option("--out", fig1_out, "CSV output path")->required();
    fig1->add_option("--n", fig1_cfg.n, "Subdivisions per axis")->check(CLI::Range(2, 1 << 16));
    fig1->add_option("--ratios", fig1_cfg.ratios, "Speed ratios r")->delimiter(',');
    fig1->add_option("--buckets", fig1_cfg.buckets, "Bucket counts n_B")->delimiter(',');
    fig1->add_flag("--sampled-extremes", fig1_sampled,
                   "Use sampled f_min/f_max instead of the analytic 1 and r");

    Fig2Config fig2_cfg;
    std::string fig2_out;
    std::optional<int> fig2_buckets;
    auto* fig2 = app.add_subcommand("fig2", "Operation counts and run time, exact vs untidy");
    fig2->add_option("--out", fig2_out, "CSV output path")->required();
    fig2->add_option("--sizes", fig2_cfg.sizes, "Grid sizes n")->delimiter(',');
    fig2->add_option("--buckets", fig2_buckets, "Fixed n_B (default n_B = n)")
        ->check(CLI::PositiveNumber);
    fig2->add_option("--seed", fig2_cfg.seed, "PRNG seed");
    fig2->add_option("--u-floor", fig2_cfg.u_floor, "Lower clamp for 1/F samples");
    fig2->add_flag("--timing", fig2_cfg.timing, "Record wall time (makes output machine-dependent)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) {
        rev.pop_back();
    }
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kUsage;
    }

    // Validation of flag values and inputs.
    std::optional<Problem> problem;
    try {
        if (solve->parsed()) {
            if (solve_queue == "untidy" && !solve_buckets) {
                throw UsageError("--queue untidy requires --buckets");
            }
            if (solve_queue == "exact" && solve_buckets) {
                throw UsageError("--buckets only applies to --queue untidy");
            }
            require_writable(solve_out);
            problem.emplace(build_problem(solve_flags));
        } else if (oracle->parsed()) {
            require_writable(oracle_out);
            problem.emplace(build_problem(oracle_flags));
        } else if (verify->parsed()) {
            if (!verify_out.empty()) {
                require_writable(verify_out);
            }
            problem.emplace(build_problem(verify_flags));
        } else if (fig1->parsed()) {
            require_writable(fig1_out);
            fig1_cfg.analytic_extremes = !fig1_sampled;
            if (fig1_cfg.ratios.empty() || fig1_cfg.buckets.empty()) {
                throw UsageError("fig1 needs at least one ratio and one bucket count");
            }
            for (double r : fig1_cfg.ratios) {
                if (!(r >= 1.0)) throw UsageError("fig1 ratios must be >= 1");
            }
            for (int b : fig1_cfg.buckets) {
                if (b < 1) throw UsageError("fig1 bucket counts must be >= 1");
            }
        } else if (fig2->parsed()) {
            require_writable(fig2_out);
            fig2_cfg.buckets = fig2_buckets;
            if (fig2_cfg.sizes.empty()) {
                throw UsageError("fig2 needs at least one grid size");
            }
            for (int n : fig2_cfg.sizes) {
                if (n < 2) throw UsageError("fig2 grid sizes must be >= 2");
            }
            if (!(fig2_cfg.u_floor > 0.0 && fig2_cfg.u_floor < 1.0)) {
                throw UsageError("--u-floor must lie in (0, 1)");
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (solve->parsed()) {
            const auto& p = *problem;
            const MarchResult res =
                solve_queue == "exact"
                    ? march_exact(p.field, p.sources)
                    : march_untidy(p.field, p.sources, UntidyParams{*solve_buckets, std::nullopt});
            save_grid(solve_out, res.t, parse_dump_format(solve_format));
            out << "queue=" << solve_queue << " n=" << p.field.spec().n();
            if (solve_buckets) {
                out << " n_B=" << *solve_buckets;
            }
            out << '\n';
            print_metrics(out, res.metrics);
            return kOk;
        }
        if (oracle->parsed()) {
            const auto& p = *problem;
            save_grid(oracle_out, sweep_oracle(p.field, p.sources, oracle_tol),
                      parse_dump_format(oracle_format));
            return kOk;
        }
        if (verify->parsed()) {
            const auto& p = *problem;
            const double h = p.field.spec().h();
            MarchOptions opts;
            opts.record_band_trace = true;
            const UntidyParams up{verify_buckets, std::nullopt};
            const MarchResult exact = march_exact(p.field, p.sources, opts);
            MarchResult untidy = march_untidy(p.field, p.sources, up, opts);
#ifdef FMM_NEGATIVE_CONTROL
            corrupt(untidy.t);
#endif
            const GridFunction reference = sweep_oracle(p.field, p.sources, 1e-14);
            const ErrorReport report = measure_error_bound(
                exact.t, untidy.t, p.field, p.sources, ErrorBoundParams{verify_buckets, {}, {}});

            std::ostringstream row;
            write_error_report_header(row);
            write_error_report_row(row, report);
            out << row.str();
            if (!verify_out.empty()) {
                write_file_atomically(verify_out, row.str());
            }

            std::vector<std::string> failures;
            if (report.violation) {
                failures.push_back("untidy error bound: " + *report.violation);
            }
            if (!check_band_trace(exact.band_trace, h, p.field.f_min(), 0.0, false)) {
                failures.push_back("narrow-band width (exact queue) exceeds h/f_min");
            }
            if (!check_band_trace(untidy.band_trace, h, p.field.f_min(),
                                  untidy_delta(p.field, up), true)) {
                failures.push_back("narrow-band width (untidy queue) exceeds h/f_min + delta");
            }
            const double gap = max_abs_difference(exact.t, reference);
            if (!(gap <= 1e-12)) {
                failures.push_back("oracle equivalence: exact march differs from sweeping by " +
                                   format_real(gap));
            }
            for (const auto& f : failures) {
                err << "FAILED " << f << '\n';
            }
            return failures.empty() ? kOk : kVerificationFailed;
        }
        if (fig1->parsed()) {
            const auto rows = run_fig1(fig1_cfg);
            std::ostringstream os;
            write_fig1_csv(os, fig1_cfg, rows);
            write_file_atomically(fig1_out, os.str());
            out << "wrote " << rows.size() << " rows to " << fig1_out << '\n';
            return kOk;
        }
        if (fig2->parsed()) {
            const auto rows = run_fig2(fig2_cfg);
            std::ostringstream os;
            write_fig2_csv(os, fig2_cfg, rows);
            write_file_atomically(fig2_out, os.str());
            out << "wrote " << rows.size() << " rows to " << fig2_out << '\n';
            return kOk;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}

}  // namespace fmm::cli
