#include "fmm/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fmm/grid_io.hpp"
#include "fmm/verify.hpp"

namespace fmm {

std::vector<Fig1Row> run_fig1(const Fig1Config& cfg) {
    const GridSpec spec(cfg.n);
    const BoundarySet sources(spec, {{cfg.n, 0}});
    std::vector<Fig1Row> rows;
    rows.reserve(cfg.ratios.size() * cfg.buckets.size());
    for (double r : cfg.ratios) {
        const SpeedModel model("sin-ratio", {{"r", r}});
        const SpeedField f = model.build(spec);
        const auto exact = march_exact(f, sources);
        for (int nb : cfg.buckets) {
            ErrorBoundParams params{nb, std::nullopt, std::nullopt};
            if (cfg.analytic_extremes) {
                params.f_min = model.analytic_f_min();
                params.f_max = model.analytic_f_max();
            }
            const auto untidy = march_untidy(f, sources, UntidyParams{nb, params.f_min});
            ErrorReport rep = measure_error_bound(exact.t, untidy.t, f, sources, params);
            if (rep.violation) {
                const std::string what = "r=" + format_real(r) + ", n_B=" + std::to_string(nb) +
                                         ": " + *rep.violation;
                throw ErrorBoundViolation(what, std::move(rep));
            }
            rows.push_back({r, nb, cfg.n, rep.max_rel_err, rep.error_bound, rep.monotone_ok});
        }
    }
    return rows;
}

void write_fig1_csv(std::ostream& out, const Fig1Config& cfg, std::span<const Fig1Row> rows) {
    out << "# experiment: relative error vs speed ratio\n"
        << "# speed: sin-ratio, source: (" << cfg.n << ",0), n: " << cfg.n << '\n'
        << "# delta source: " << (cfg.analytic_extremes ? "analytic f_min=1, f_max=r" : "sampled")
        << '\n'
        << "r,n_B,n,max_rel_err,bound\n";
    for (const auto& row : rows) {
        out << format_real(row.r) << ',' << row.buckets << ',' << row.n << ','
            << format_real(row.max_rel_err) << ',' << format_real(row.bound) << '\n';
    }
}

std::vector<Fig2Row> run_fig2(const Fig2Config& cfg) {
    using Clock = std::chrono::steady_clock;
    std::vector<Fig2Row> rows;
    for (int n : cfg.sizes) {
        const GridSpec spec(n);
        const SpeedField f = inverse_uniform_field(spec, cfg.seed, cfg.u_floor);
        const BoundarySet sources(spec, {cfg.source.value_or(GridIndex{n, 0})});
        const auto interior = static_cast<std::uint64_t>(spec.size() - sources.size());
        const int nb = cfg.buckets.value_or(n);
        for (QueueKind kind : {QueueKind::Exact, QueueKind::Untidy}) {
            const auto start = Clock::now();
            const MarchResult res = kind == QueueKind::Exact
                                        ? march_exact(f, sources)
                                        : march_untidy(f, sources, UntidyParams{nb, std::nullopt});
            const std::chrono::duration<double> elapsed = Clock::now() - start;
            rows.push_back({n, interior, kind, kind == QueueKind::Exact ? 0 : nb, res.metrics,
                            cfg.timing ? std::optional<double>(elapsed.count()) : std::nullopt});
        }
    }
    return rows;
}

void write_fig2_csv(std::ostream& out, const Fig2Config& cfg, std::span<const Fig2Row> rows) {
    out << "# experiment: run time and operation counts, exact vs untidy queue\n"
        << "# speed: inv-uniform, seed: " << cfg.seed << ", prng: " << kPrngId
        << ", u_floor: " << format_real(cfg.u_floor) << '\n'
        << "# delta source: sampled f_min; buckets: "
        << (cfg.buckets ? std::to_string(*cfg.buckets) : std::string("n_B = n")) << '\n'
        << "# wall_time: " << (cfg.timing ? "seconds" : "not measured (NA)") << '\n'
        << "n,N,queue_kind,pops,stale_skips,bucket_traversals,wall_time,n_B,insertions,"
           "reinsertions,comparisons,max_point_insertions\n";
    for (const auto& row : rows) {
        const auto& m = row.metrics;
        out << row.n << ',' << row.interior_points << ',' << to_string(row.queue) << ',' << m.pops
            << ',' << m.stale_skips << ',' << m.bucket_traversals << ','
            << (row.wall_seconds ? format_real(*row.wall_seconds) : std::string("NA")) << ','
            << row.buckets << ',' << m.insertions << ',' << m.reinsertions << ','
            << m.comparisons << ',' << m.max_point_insertions << '\n';
    }
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line needs two equally sized samples of length >= 2");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_line needs at least two distinct x values");
    }
    const double slope = sxy / sxx;
    const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return {slope, my - slope * mx, r2};
}

}  // namespace fmm
