#include "fmm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fmm {

GridSpec::GridSpec(int n) : n_(n), h_(0.0) {
    if (n < 2) {
        throw std::invalid_argument("grid needs n >= 2 subdivisions, got " + std::to_string(n));
    }
    h_ = 1.0 / static_cast<double>(n);
}

namespace {

std::string describe_bad_speed(GridIndex where, double value) {
    std::ostringstream os;
    os << "speed at (" << where.i << ", " << where.j << ") must be finite and positive, got "
       << value;
    return os.str();
}

}  // namespace

InvalidSpeedError::InvalidSpeedError(GridIndex where, double value)
    : std::invalid_argument(describe_bad_speed(where, value)), where_(where), value_(value) {}

SpeedField::SpeedField(GridSpec spec, std::vector<double> samples)
    : spec_(spec), f_(std::move(samples)), f_min_(kInfinity), f_max_(0.0) {
    if (f_.size() != spec_.size()) {
        throw std::invalid_argument("speed sample count " + std::to_string(f_.size()) +
                                    " does not match grid size " + std::to_string(spec_.size()));
    }
    for (std::size_t k = 0; k < f_.size(); ++k) {
        const double v = f_[k];
        if (!std::isfinite(v) || v <= 0.0) {
            throw InvalidSpeedError(spec_.unflat(k), v);
        }
        f_min_ = std::min(f_min_, v);
        f_max_ = std::max(f_max_, v);
    }
}

SpeedField make_speed_field(const GridSpec& spec, const SpeedSampler& sampler) {
    std::vector<double> f(spec.size());
    for (int i = 0; i <= spec.n(); ++i) {
        for (int j = 0; j <= spec.n(); ++j) {
            f[spec.flat(i, j)] = sampler(spec.x(i), spec.y(j));
        }
    }
    return SpeedField(spec, std::move(f));
}

BoundarySet::BoundarySet(const GridSpec& spec, std::vector<GridIndex> points)
    : spec_(spec), points_(std::move(points)), mask_(spec.size(), false) {
    if (points_.empty()) {
        throw std::invalid_argument("boundary set must not be empty");
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (const auto& p : points_) {
        if (!spec_.contains(p)) {
            throw std::invalid_argument("boundary point (" + std::to_string(p.i) + ", " +
                                        std::to_string(p.j) + ") lies outside the grid");
        }
        mask_[spec_.flat(p)] = true;
    }
}

bool BoundarySet::contains(int i, int j) const noexcept {
    return spec_.contains(i, j) && mask_[spec_.flat(i, j)];
}

BoundarySet BoundarySet::all(const GridSpec& spec) {
    std::vector<GridIndex> pts;
    pts.reserve(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        pts.push_back(spec.unflat(k));
    }
    return BoundarySet(spec, std::move(pts));
}

GridFunction::GridFunction(GridSpec spec, double fill) : spec_(spec), values_(spec.size(), fill) {}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) {
        throw std::invalid_argument("grid function has " + std::to_string(values_.size()) +
                                    " values, expected " + std::to_string(spec_.size()));
    }
}

GridFunction GridFunction::scaled(double theta) const {
    GridFunction out(*this);
    for (auto& v : out.values_) {
        v *= theta;
    }
    return out;
}

GridFunction GridFunction::shifted(double offset) const {
    GridFunction out(*this);
    for (auto& v : out.values_) {
        v += offset;
    }
    return out;
}

NeighborValues neighbor_values(const GridFunction& t, int i, int j) noexcept {
    return {t.at(i - 1, j), t.at(i + 1, j), t.at(i, j - 1), t.at(i, j + 1)};
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
    if (!(a.spec() == b.spec())) {
        throw std::invalid_argument("grid functions live on different grids");
    }
    double worst = 0.0;
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t k = 0; k < av.size(); ++k) {
        if (av[k] == bv[k]) {
            continue;
        }
        worst = std::max(worst, std::abs(av[k] - bv[k]));
    }
    return worst;
}

}  // namespace fmm
