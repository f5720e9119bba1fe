#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fmm/grid.hpp"

namespace fmm {

using SpeedParams = std::map<std::string, double, std::less<>>;

/// Identifier recorded in output headers for the generator behind
/// "inv-uniform" fields.
inline constexpr std::string_view kPrngId = "mt19937_64/53bit";

inline constexpr double kDefaultUFloor = 1.0 / 64.0;

/// (1 + (r-1)/2) + ((r-1)/2) * sin(2*pi*|x|); ranges over [1, r].
double sin_ratio_speed(double r, double x, double y);

/// 1/F drawn i.i.d. uniform on (u_floor, 1] in row-major order from a
/// seeded mt19937_64; each draw uses the top 53 bits of one output.
SpeedField inverse_uniform_field(const GridSpec& spec, std::uint64_t seed, double u_floor);

/// A named speed model from the catalog:
///   constant     c (default 1)
///   sin-ratio    r >= 1 (required)
///   inv-uniform  seed (default 0), u_floor in (0, 1) (default 1/64)
class SpeedModel {
public:
    SpeedModel(std::string name, SpeedParams params);

    const std::string& name() const noexcept { return name_; }
    const SpeedParams& params() const noexcept { return params_; }
    double param(std::string_view key) const;

    /// Analytic extremes, when the model has them.
    std::optional<double> analytic_f_min() const;
    std::optional<double> analytic_f_max() const;

    SpeedField build(const GridSpec& spec) const;

private:
    std::string name_;
    SpeedParams params_;
};

}  // namespace fmm
