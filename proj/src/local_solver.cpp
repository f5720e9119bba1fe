#include "fmm/local_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fmm {

double solve_local(const LocalInputs& in) {
    const double lo = std::min(in.a, in.b);
    if (!(lo < kInfinity)) {
        throw NoUpwindNeighborError();
    }
    const double w = in.h / in.f;
    const double gap = in.a - in.b;
    if (std::abs(gap) >= w) {
        return lo + w;
    }
    const double x = 0.5 * (in.a + in.b + std::sqrt(2.0 * w * w - gap * gap));
    // Mathematically x > max(a, b) here; rounding must not break causality.
    return std::max(x, std::max(in.a, in.b));
}

double hopf_lax(const LocalInputs& in, int resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("hopf_lax resolution must be >= 2");
    }
    if (!(std::min(in.a, in.b) < kInfinity)) {
        throw NoUpwindNeighborError();
    }
    const double w = in.h / in.f;
    double best = kInfinity;
    for (int k = 0; k <= resolution; ++k) {
        const double s = static_cast<double>(k) / resolution;
        const double t = 1.0 - s;
        if ((s > 0.0 && std::isinf(in.a)) || (t > 0.0 && std::isinf(in.b))) {
            continue;
        }
        double value = w * std::sqrt(s * s + t * t);
        if (s > 0.0) {
            value += s * in.a;
        }
        if (t > 0.0) {
            value += t * in.b;
        }
        best = std::min(best, value);
    }
    return best;
}

LocalInputs gather_inputs(const GridFunction& t, const SpeedField& f, int i, int j) noexcept {
    const auto nb = neighbor_values(t, i, j);
    return {std::min(nb.left, nb.right), std::min(nb.down, nb.up), t.spec().h(), f.at(i, j)};
}

double residual(const GridFunction& t, const SpeedField& f, int i, int j) {
    const double tij = t.at(i, j);
    if (!std::isfinite(tij)) {
        throw std::domain_error("residual undefined at (" + std::to_string(i) + ", " +
                                std::to_string(j) + "): value is not finite");
    }
    const auto nb = neighbor_values(t, i, j);
    const double h = t.spec().h();
    // An infinite neighbour gives -inf here and is absorbed by the max with 0.
    const double dx = std::max({(tij - nb.left) / h, (tij - nb.right) / h, 0.0});
    const double dy = std::max({(tij - nb.down) / h, (tij - nb.up) / h, 0.0});
    return f.at(i, j) * std::sqrt(dx * dx + dy * dy);
}

}  // namespace fmm
