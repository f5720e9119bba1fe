#include "fmm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "fmm/grid_io.hpp"
#include "fmm/local_solver.hpp"

namespace fmm {

GridFunction sweep_oracle(const SpeedField& f, const BoundarySet& sources, double tol,
                          std::optional<int> max_cycles) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("sweep tolerance must be positive");
    }
    const GridSpec& spec = f.spec();
    const int n = spec.n();
    GridFunction t(spec, kInfinity);
    for (const auto& p : sources.points()) {
        t.set(p, 0.0);
    }
    const auto& fixed = sources.mask();

    auto relax = [&](int i, int j, double& change) {
        if (fixed[spec.flat(i, j)]) {
            return;
        }
        const LocalInputs in = gather_inputs(t, f, i, j);
        if (!(std::min(in.a, in.b) < kInfinity)) {
            return;
        }
        const double x = solve_local(in);
        const double old = t.at(i, j);
        if (x < old) {
            t.set(i, j, x);
            change = std::max(change, std::isinf(old) ? kInfinity : old - x);
        }
    };

    const int cap = max_cycles.value_or(10 * (n + 1));
    for (int cycle = 0; cycle < cap; ++cycle) {
        double change = 0.0;
        for (int order = 0; order < 4; ++order) {
            const bool i_up = order < 2;
            const bool j_up = order % 2 == 0;
            for (int ii = 0; ii <= n; ++ii) {
                const int i = i_up ? ii : n - ii;
                for (int jj = 0; jj <= n; ++jj) {
                    relax(i, j_up ? jj : n - jj, change);
                }
            }
        }
        if (change < tol) {
            return t;
        }
    }
    throw OracleDivergenceError("sweeping did not converge within " + std::to_string(cap) +
                                " cycles");
}

ResidualRange residual_range(const GridFunction& t, const SpeedField& f,
                             const BoundarySet& sources) {
    ResidualRange r;
    const GridSpec& spec = f.spec();
    for (int i = 0; i <= spec.n(); ++i) {
        for (int j = 0; j <= spec.n(); ++j) {
            if (sources.contains(i, j)) {
                continue;
            }
            const double v = residual(t, f, i, j);
            r.min = std::min(r.min, v);
            r.max = std::max(r.max, v);
        }
    }
    return r;
}

namespace {

std::string describe_hypothesis(Hypothesis which, GridIndex where, double residual) {
    std::ostringstream os;
    os << (which == Hypothesis::Subsolution ? "subsolution" : "supersolution")
       << " hypothesis fails at (" << where.i << ", " << where.j << "): residual " << residual
       << (which == Hypothesis::Subsolution ? " > 1" : " < 1");
    return os.str();
}

}  // namespace

ComparisonHypothesisError::ComparisonHypothesisError(Hypothesis which, GridIndex where,
                                                     double residual)
    : std::invalid_argument(describe_hypothesis(which, where, residual)),
      which_(which),
      where_(where),
      residual_(residual) {}

bool check_comparison(const GridFunction& s, const GridFunction& t, const SpeedField& f,
                      const BoundarySet& sources) {
    const GridSpec& spec = f.spec();
    if (!(s.spec() == spec) || !(t.spec() == spec)) {
        throw std::invalid_argument("grid functions and speed field live on different grids");
    }
    double interior_excess = 0.0;
    double boundary_excess = 0.0;
    for (int i = 0; i <= spec.n(); ++i) {
        for (int j = 0; j <= spec.n(); ++j) {
            const double diff = s.at(i, j) - t.at(i, j);
            if (sources.contains(i, j)) {
                boundary_excess = std::max(boundary_excess, diff);
                continue;
            }
            const double rs = residual(s, f, i, j);
            if (rs > 1.0 + kHypothesisTolerance) {
                throw ComparisonHypothesisError(Hypothesis::Subsolution, {i, j}, rs);
            }
            const double rt = residual(t, f, i, j);
            if (rt < 1.0 - kHypothesisTolerance) {
                throw ComparisonHypothesisError(Hypothesis::Supersolution, {i, j}, rt);
            }
            interior_excess = std::max(interior_excess, diff);
        }
    }
    return interior_excess <= boundary_excess + kConclusionTolerance;
}

ErrorReport measure_error_bound(const GridFunction& exact, const GridFunction& untidy,
                                const SpeedField& f, const BoundarySet& sources,
                                const ErrorBoundParams& params) {
    if (params.buckets < 1) {
        throw std::invalid_argument("bucket count must be >= 1");
    }
    const GridSpec& spec = f.spec();
    ErrorReport r;
    r.n = spec.n();
    r.buckets = params.buckets;
    r.f_ratio = params.f_max.value_or(f.f_max()) / params.f_min.value_or(f.f_min());
    r.error_bound = std::sqrt(2.0) * r.f_ratio / static_cast<double>(params.buckets);

    std::optional<std::string> below;
    std::optional<std::string> above;
    for (int i = 0; i <= spec.n(); ++i) {
        for (int j = 0; j <= spec.n(); ++j) {
            if (sources.contains(i, j)) {
                continue;
            }
            const double tu = untidy.at(i, j);
            const double te = exact.at(i, j);
            if (tu - te < -kPointwiseSlack) {
                r.monotone_ok = false;
                if (!below) {
                    std::ostringstream os;
                    os << "untidy value below exact solution at (" << i << ", " << j
                       << "): " << format_real(tu) << " < " << format_real(te);
                    below = os.str();
                }
            }
            const double rel = (tu - te) / tu;
            r.max_rel_err = std::max(r.max_rel_err, rel);
            if (rel > r.error_bound + kPointwiseSlack && !above) {
                std::ostringstream os;
                os << "relative error bound exceeded at (" << i << ", " << j
                   << "): " << format_real(rel) << " > " << format_real(r.error_bound);
                above = os.str();
            }
        }
    }
    r.violation = below ? below : above;
    return r;
}

ErrorReport measure_error_bound(const SpeedField& f, const BoundarySet& sources,
                                const ErrorBoundParams& params) {
    const auto exact = march_exact(f, sources);
    const auto untidy = march_untidy(f, sources, UntidyParams{params.buckets, params.f_min});
    return measure_error_bound(exact.t, untidy.t, f, sources, params);
}

ErrorReport check_error_bound(const SpeedField& f, const BoundarySet& sources,
                              const ErrorBoundParams& params) {
    ErrorReport r = measure_error_bound(f, sources, params);
    if (r.violation) {
        const std::string what = *r.violation;
        throw ErrorBoundViolation(what, std::move(r));
    }
    return r;
}

bool check_band_trace(std::span<const BandRange> trace, double h, double f_min, double delta,
                      bool untidy) {
    const double width = h / f_min;
    return std::all_of(trace.begin(), trace.end(), [&](const BandRange& b) {
        return untidy ? b.width() < width + delta : b.width() <= width + kBandSlack;
    });
}

double value_ceiling(const SpeedField& f) { return 2.0 / f.f_min(); }

void write_error_report_header(std::ostream& out) {
    out << "n,n_B,f_ratio,max_rel_err,error_bound,monotone_ok\n";
}

void write_error_report_row(std::ostream& out, const ErrorReport& r) {
    out << r.n << ',' << r.buckets << ',' << format_real(r.f_ratio) << ','
        << format_real(r.max_rel_err) << ',' << format_real(r.error_bound) << ','
        << (r.monotone_ok ? "true" : "false") << '\n';
}

}  // namespace fmm
