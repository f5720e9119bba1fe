#include "fmm/marcher.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fmm {

BandRange narrow_band_range(const MarchState& state) {
    BandRange r{kInfinity, -kInfinity};
    const auto values = state.t.values();
    bool any = false;
    for (std::size_t k = 0; k < state.tags.size(); ++k) {
        if (state.tags[k] == Tag::Trial) {
            r.min = std::min(r.min, values[k]);
            r.max = std::max(r.max, values[k]);
            any = true;
        }
    }
    if (!any) {
        throw std::logic_error("narrow band is empty");
    }
    return r;
}

QueueKind parse_queue_kind(std::string_view name) {
    if (name == "exact") {
        return QueueKind::Exact;
    }
    if (name == "untidy") {
        return QueueKind::Untidy;
    }
    throw std::invalid_argument("unknown queue kind '" + std::string(name) + "'");
}

std::string_view to_string(QueueKind kind) {
    return kind == QueueKind::Exact ? "exact" : "untidy";
}

MarchResult march_exact(const SpeedField& f, const BoundarySet& sources, const MarchOptions& opts,
                        TieBreak tie_break) {
    ExactQueue q(tie_break);
    return march(f, sources, q, opts);
}

double untidy_delta(const SpeedField& f, const UntidyParams& params) {
    return UntidyQueue(f.spec().h(), params.f_min_override.value_or(f.f_min()), params.buckets)
        .delta();
}

MarchResult march_untidy(const SpeedField& f, const BoundarySet& sources,
                         const UntidyParams& params, const MarchOptions& opts) {
    const double f_min = params.f_min_override.value_or(f.f_min());
    if (f_min > f.f_min() * (1.0 + 1e-9)) {
        throw std::invalid_argument("f_min override exceeds the smallest sampled speed");
    }
    UntidyQueue q(f.spec().h(), f_min, params.buckets);
    return march(f, sources, q, opts);
}

}  // namespace fmm
