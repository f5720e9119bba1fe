#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "fmm/grid.hpp"
#include "fmm/local_solver.hpp"
#include "fmm/queue.hpp"
#include "fmm/queue_exact.hpp"
#include "fmm/queue_untidy.hpp"

namespace fmm {

enum class Tag : std::uint8_t { Far, Trial, Known };

struct MarchState {
    explicit MarchState(const GridSpec& spec)
        : tags(spec.size(), Tag::Far), t(spec, kInfinity) {}

    std::vector<Tag> tags;
    GridFunction t;
    std::size_t accepted_count = 0;
};

struct RunMetrics {
    std::uint64_t pops = 0;         // every entry handed out by the queue, stale or not
    std::uint64_t stale_skips = 0;  // pops of already-known points
    std::uint64_t insertions = 0;
    std::uint64_t reinsertions = 0;
    std::uint64_t bucket_traversals = 0;
    std::uint64_t comparisons = 0;  // heap comparator calls (exact queue only)
    std::uint64_t cycles = 0;       // points accepted from the narrow band
    std::uint32_t max_point_insertions = 0;

    std::uint64_t work() const noexcept { return pops + stale_skips + bucket_traversals; }
    double mean_insertions_per_point() const noexcept {
        return cycles == 0 ? 0.0 : static_cast<double>(insertions) / static_cast<double>(cycles);
    }
};

struct BandRange {
    double min;
    double max;

    double width() const noexcept { return max - min; }
};

struct MarchOptions {
    /// Narrow-band extremes at the start of every selection step.
    bool record_band_trace = false;
    /// Values in the order points were accepted.
    bool record_acceptance = false;
    /// Called with the state at the start of every selection step.
    std::function<void(const MarchState&)> observer;
};

struct MarchResult {
    GridFunction t;
    RunMetrics metrics;
    std::vector<BandRange> band_trace;
    std::vector<double> accepted;
    std::vector<std::uint16_t> point_insertions;  // row-major, one per lattice point
};

/// Extremes of T over trial-tagged points; throws std::logic_error if the
/// band is empty. Linear scan, intended for checks rather than the hot path.
BandRange narrow_band_range(const MarchState& state);

namespace detail {

inline LocalInputs known_inputs(const MarchState& st, const SpeedField& f, int i, int j) {
    const GridSpec& spec = f.spec();
    auto known = [&](int a, int b) {
        return spec.contains(a, b) && st.tags[spec.flat(a, b)] == Tag::Known ? st.t.at(a, b)
                                                                                 : kInfinity;
    };
    return {std::min(known(i - 1, j), known(i + 1, j)), std::min(known(i, j - 1), known(i, j + 1)),
            spec.h(), f.at(i, j)};
}

inline constexpr int kDi[4] = {-1, 1, 0, 0};
inline constexpr int kDj[4] = {0, 0, -1, 1};

class BandTracker {
public:
    explicit BandTracker(bool on) : on_(on) {}
    void add(double v) {
        if (on_) values_.insert(v);
    }
    void remove(double v) {
        if (on_) values_.erase(values_.find(v));
    }
    void replace(double from, double to) {
        remove(from);
        add(to);
    }
    bool empty() const { return values_.empty(); }
    BandRange range() const { return {*values_.begin(), *values_.rbegin()}; }

private:
    bool on_;
    std::multiset<double> values_;
};

// Tags (i, j) trial if needed and (re)computes its value from known
// neighbours only.
template <MarchQueue Q>
void update_neighbor(MarchState& st, const SpeedField& f, Q& queue, int i, int j,
                     std::vector<std::uint16_t>& inserts, BandTracker& band) {
    const std::size_t k = f.spec().flat(i, j);
    if (st.tags[k] == Tag::Known) {
        return;
    }
    const double x = solve_local(known_inputs(st, f, i, j));
    if (st.tags[k] == Tag::Far) {
        st.tags[k] = Tag::Trial;
        st.t.set(i, j, x);
        queue.insert({i, j}, x);
        ++inserts[k];
        band.add(x);
        return;
    }
    const double old = st.t.at(i, j);
    if (x < old) {
        st.t.set(i, j, x);
        band.replace(old, x);
        if (queue.decrease_key({i, j}, old, x)) {
            ++inserts[k];
        }
    }
}

}  // namespace detail

/// Tags the sources known with value 0 and seeds the narrow band with their
/// non-source neighbours.
template <MarchQueue Q>
MarchState initialize(const SpeedField& f, const BoundarySet& sources, Q& queue,
                      std::vector<std::uint16_t>* inserts = nullptr,
                      detail::BandTracker* band = nullptr) {
    const GridSpec& spec = f.spec();
    MarchState st(spec);
    for (const auto& p : sources.points()) {
        st.tags[spec.flat(p)] = Tag::Known;
        st.t.set(p, 0.0);
    }
    std::vector<std::uint16_t> local_inserts;
    detail::BandTracker local_band(false);
    auto& ins = inserts ? *inserts : local_inserts;
    auto& bt = band ? *band : local_band;
    ins.assign(spec.size(), 0);
    for (const auto& p : sources.points()) {
        for (int d = 0; d < 4; ++d) {
            const int ni = p.i + detail::kDi[d];
            const int nj = p.j + detail::kDj[d];
            if (spec.contains(ni, nj)) {
                detail::update_neighbor(st, f, queue, ni, nj, ins, bt);
            }
        }
    }
    return st;
}

/// Fast marching: repeatedly accept the queue's choice of trial point, tag
/// its neighbours trial and recompute them from known values. With the exact
/// queue the result is the unique discrete solution; with the untidy queue
/// it is a supersolution that overestimates by at most a relative factor
/// controlled by the bucket count.
template <MarchQueue Q>
MarchResult march(const SpeedField& f, const BoundarySet& sources, Q& queue,
                  const MarchOptions& opts = {}) {
    const GridSpec& spec = f.spec();
    detail::BandTracker band(opts.record_band_trace);
    std::vector<std::uint16_t> inserts;
    MarchState st = initialize(f, sources, queue, &inserts, &band);

    MarchResult out{GridFunction(spec), {}, {}, {}, {}};
    RunMetrics& m = out.metrics;
    if (opts.record_acceptance) {
        out.accepted.reserve(spec.size() - sources.size());
    }

    for (;;) {
        if (opts.record_band_trace && !band.empty()) {
            out.band_trace.push_back(band.range());
        }
        if (opts.observer) {
            opts.observer(st);
        }
        std::optional<QueueEntry> e;
        while ((e = queue.pop_min()) && st.tags[spec.flat(e->point)] == Tag::Known) {
            ++m.stale_skips;
        }
        if (!e) {
            break;
        }
        const GridIndex p = e->point;
        const std::size_t k = spec.flat(p);
        const double value = st.t.at(p);
        st.tags[k] = Tag::Known;
        ++st.accepted_count;
        ++m.cycles;
        band.remove(value);
        if (opts.record_acceptance) {
            out.accepted.push_back(value);
        }
        for (int d = 0; d < 4; ++d) {
            const int ni = p.i + detail::kDi[d];
            const int nj = p.j + detail::kDj[d];
            if (spec.contains(ni, nj)) {
                detail::update_neighbor(st, f, queue, ni, nj, inserts, band);
            }
        }
    }

    const QueueStats& qs = queue.stats();
    m.pops = qs.pops;
    m.insertions = qs.insertions;
    m.reinsertions = qs.reinsertions;
    m.bucket_traversals = qs.bucket_traversals;
    m.comparisons = qs.comparisons;
    for (auto c : inserts) {
        m.max_point_insertions = std::max<std::uint32_t>(m.max_point_insertions, c);
    }
    out.t = std::move(st.t);
    out.point_insertions = std::move(inserts);
    return out;
}

enum class QueueKind { Exact, Untidy };

QueueKind parse_queue_kind(std::string_view name);
std::string_view to_string(QueueKind kind);

struct UntidyParams {
    int buckets = 0;
    /// Replaces the empirical grid minimum when computing delta.
    std::optional<double> f_min_override;
};

MarchResult march_exact(const SpeedField& f, const BoundarySet& sources,
                        const MarchOptions& opts = {},
                        TieBreak tie_break = TieBreak::Lexicographic);

MarchResult march_untidy(const SpeedField& f, const BoundarySet& sources,
                         const UntidyParams& params, const MarchOptions& opts = {});

/// delta = h / (f_min * n_B) as used by march_untidy.
double untidy_delta(const SpeedField& f, const UntidyParams& params);

}  // namespace fmm
