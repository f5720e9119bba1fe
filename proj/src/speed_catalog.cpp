#include "fmm/speed_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace fmm {

double sin_ratio_speed(double r, double x, double y) {
    const double half = 0.5 * (r - 1.0);
    return (1.0 + half) + half * std::sin(2.0 * std::numbers::pi * std::hypot(x, y));
}

SpeedField inverse_uniform_field(const GridSpec& spec, std::uint64_t seed, double u_floor) {
    if (!(u_floor > 0.0) || !(u_floor < 1.0)) {
        throw std::invalid_argument("u_floor must lie in (0, 1)");
    }
    std::mt19937_64 gen(seed);
    std::vector<double> f(spec.size());
    for (auto& v : f) {
        // v01 in [0, 1); u in (u_floor, 1].
        const double v01 = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double u = 1.0 - v01 * (1.0 - u_floor);
        v = 1.0 / u;
    }
    return SpeedField(spec, std::move(f));
}

namespace {

const SpeedParams& defaults_for(std::string_view name) {
    static const SpeedParams constant{{"c", 1.0}};
    static const SpeedParams sin_ratio{};
    static const SpeedParams inv_uniform{{"seed", 0.0}, {"u_floor", kDefaultUFloor}};
    if (name == "constant") return constant;
    if (name == "sin-ratio") return sin_ratio;
    if (name == "inv-uniform") return inv_uniform;
    throw std::invalid_argument("unknown speed model '" + std::string(name) +
                                "' (expected constant, sin-ratio, inv-uniform or file:<path>)");
}

}  // namespace

SpeedModel::SpeedModel(std::string name, SpeedParams params) : name_(std::move(name)) {
    const SpeedParams& defaults = defaults_for(name_);
    const std::vector<std::string> allowed = name_ == "constant"    ? std::vector<std::string>{"c"}
                                             : name_ == "sin-ratio" ? std::vector<std::string>{"r"}
                                                                    : std::vector<std::string>{"seed", "u_floor"};
    for (const auto& [k, v] : params) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            throw std::invalid_argument("speed model '" + name_ + "' has no parameter '" + k + "'");
        }
        if (!std::isfinite(v)) {
            throw std::invalid_argument("speed parameter '" + k + "' must be finite");
        }
    }
    params_ = defaults;
    for (const auto& [k, v] : params) {
        params_[k] = v;
    }
    if (name_ == "constant" && !(params_.at("c") > 0.0)) {
        throw std::invalid_argument("constant speed needs c > 0");
    }
    if (name_ == "sin-ratio") {
        if (!params_.contains("r")) {
            throw std::invalid_argument("sin-ratio speed needs parameter r");
        }
        if (!(params_.at("r") >= 1.0)) {
            throw std::invalid_argument("sin-ratio speed needs r >= 1");
        }
    }
    if (name_ == "inv-uniform") {
        const double seed = params_.at("seed");
        if (seed < 0.0 || seed != std::floor(seed) || seed > 9007199254740992.0) {
            throw std::invalid_argument("inv-uniform seed must be a non-negative integer");
        }
        const double u = params_.at("u_floor");
        if (!(u > 0.0) || !(u < 1.0)) {
            throw std::invalid_argument("inv-uniform u_floor must lie in (0, 1)");
        }
    }
}

double SpeedModel::param(std::string_view key) const {
    const auto it = params_.find(key);
    if (it == params_.end()) {
        throw std::out_of_range("speed model '" + name_ + "' has no parameter '" +
                                std::string(key) + "'");
    }
    return it->second;
}

std::optional<double> SpeedModel::analytic_f_min() const {
    if (name_ == "constant") return param("c");
    if (name_ == "sin-ratio") return 1.0;
    return std::nullopt;
}

std::optional<double> SpeedModel::analytic_f_max() const {
    if (name_ == "constant") return param("c");
    if (name_ == "sin-ratio") return param("r");
    return std::nullopt;
}

SpeedField SpeedModel::build(const GridSpec& spec) const {
    if (name_ == "constant") {
        const double c = param("c");
        return make_speed_field(spec, [c](double, double) { return c; });
    }
    if (name_ == "sin-ratio") {
        const double r = param("r");
        return make_speed_field(spec, [r](double x, double y) { return sin_ratio_speed(r, x, y); });
    }
    return inverse_uniform_field(spec, static_cast<std::uint64_t>(param("seed")),
                                 param("u_floor"));
}

}  // namespace fmm
