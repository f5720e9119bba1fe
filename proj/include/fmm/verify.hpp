#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "fmm/grid.hpp"
#include "fmm/marcher.hpp"

namespace fmm {

class OracleDivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gauss-Seidel fast sweeping to the fixed point of the discrete equation.
///
/// Starts from 0 on the sources and +inf elsewhere, then applies
/// T_ij <- min(T_ij, solve_local(neighbours)) in the four alternating
/// orderings until one full cycle changes no value by `tol` or more. Gives
/// up after `max_cycles` cycles, 10*(n+1) by default.
GridFunction sweep_oracle(const SpeedField& f, const BoundarySet& sources, double tol,
                          std::optional<int> max_cycles = std::nullopt);

struct ResidualRange {
    double min = kInfinity;
    double max = -kInfinity;
};

/// Residual extremes over the non-source points.
ResidualRange residual_range(const GridFunction& t, const SpeedField& f,
                             const BoundarySet& sources);

enum class Hypothesis { Subsolution, Supersolution };

class ComparisonHypothesisError : public std::invalid_argument {
public:
    ComparisonHypothesisError(Hypothesis which, GridIndex where, double residual);

    Hypothesis which() const noexcept { return which_; }
    GridIndex where() const noexcept { return where_; }
    double residual_value() const noexcept { return residual_; }

private:
    Hypothesis which_;
    GridIndex where_;
    double residual_;
};

inline constexpr double kHypothesisTolerance = 1e-10;
inline constexpr double kConclusionTolerance = 1e-12;

/// Discrete comparison principle. Requires residual(S) <= 1 + eps and
/// residual(T) >= 1 - eps at every non-source point (eps = 1e-10), throwing
/// ComparisonHypothesisError otherwise. Returns whether
///   max over interior of (S - T)+  <=  max over sources of (S - T)+  + 1e-12.
bool check_comparison(const GridFunction& s, const GridFunction& t, const SpeedField& f,
                      const BoundarySet& sources);

struct ErrorBoundParams {
    int buckets = 0;
    /// Analytic speed extremes, when known; otherwise the sampled ones.
    std::optional<double> f_min;
    std::optional<double> f_max;
};

/// Outcome of comparing an untidy run against the exact one.
struct ErrorReport {
    int n = 0;
    int buckets = 0;
    double f_ratio = 0.0;
    double max_rel_err = 0.0;   // max over interior of (T_untidy - T) / T_untidy
    double error_bound = 0.0;   // sqrt(2) * f_ratio / buckets
    bool monotone_ok = true;    // T_untidy >= T everywhere (up to 1e-12)
    std::optional<std::string> violation;

    bool ok() const noexcept { return !violation.has_value(); }
};

class ErrorBoundViolation : public std::runtime_error {
public:
    ErrorBoundViolation(const std::string& what, ErrorReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const ErrorReport& report() const noexcept { return report_; }

private:
    ErrorReport report_;
};

inline constexpr double kPointwiseSlack = 1e-12;

/// Compares two precomputed solutions on the same field.
ErrorReport measure_error_bound(const GridFunction& exact, const GridFunction& untidy,
                                const SpeedField& f, const BoundarySet& sources,
                                const ErrorBoundParams& params);

/// Runs both queues and measures; never throws on a violated bound.
ErrorReport measure_error_bound(const SpeedField& f, const BoundarySet& sources,
                                const ErrorBoundParams& params);

/// As measure_error_bound, but throws ErrorBoundViolation naming the first
/// offending point.
ErrorReport check_error_bound(const SpeedField& f, const BoundarySet& sources,
                              const ErrorBoundParams& params);

/// Every recorded band width must satisfy width <= h/f_min (+1e-14) for the
/// exact queue, or width < h/f_min + delta for the untidy queue.
bool check_band_trace(std::span<const BandRange> trace, double h, double f_min, double delta,
                      bool untidy);

inline constexpr double kBandSlack = 1e-14;

/// Upper bound 2/f_min on any finite discrete solution value.
double value_ceiling(const SpeedField& f);

void write_error_report_header(std::ostream& out);
void write_error_report_row(std::ostream& out, const ErrorReport& r);

}  // namespace fmm
