#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmm/grid.hpp"
#include "fmm/marcher.hpp"
#include "fmm/speed_catalog.hpp"

namespace fmm {

/// Error study: relative error of the untidy solution against the speed
/// ratio r, one curve per bucket count. Sources at the corner (n, 0).
struct Fig1Config {
    int n = 100;
    std::vector<double> ratios{1, 2, 4, 8, 16, 32, 64};
    std::vector<int> buckets{2, 8, 32, 128, 512, 2048};
    /// Use f_min = 1, f_max = r for delta and the bound instead of the
    /// sampled extremes.
    bool analytic_extremes = true;
};

struct Fig1Row {
    double r;
    int buckets;
    int n;
    double max_rel_err;
    double bound;
    bool monotone_ok;
};

/// Throws ErrorBoundViolation on the first cell that breaks the bound.
std::vector<Fig1Row> run_fig1(const Fig1Config& cfg);
void write_fig1_csv(std::ostream& out, const Fig1Config& cfg, std::span<const Fig1Row> rows);

/// Scaling study: operation counters for both queues on a seeded
/// inverse-uniform speed field.
struct Fig2Config {
    std::vector<int> sizes{64, 128, 256, 512, 1024};
    /// Fixed bucket count; when unset, n_B = n at each size.
    std::optional<int> buckets;
    std::uint64_t seed = 1;
    double u_floor = kDefaultUFloor;
    /// Defaults to (n, 0) at each size.
    std::optional<GridIndex> source;
    /// Measure wall time. Off by default so the CSV is reproducible.
    bool timing = false;
};

struct Fig2Row {
    int n;
    std::uint64_t interior_points;  // N = |interior|
    QueueKind queue;
    int buckets;  // 0 for the exact queue
    RunMetrics metrics;
    std::optional<double> wall_seconds;
};

std::vector<Fig2Row> run_fig2(const Fig2Config& cfg);
void write_fig2_csv(std::ostream& out, const Fig2Config& cfg, std::span<const Fig2Row> rows);

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares y = slope*x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace fmm
