#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Lattice index (i along x, j along y).
struct GridIndex {
    int i = 0;
    int j = 0;

    auto operator<=>(const GridIndex&) const = default;
};

/// Square Cartesian mesh on [0,1]^2 with n subdivisions per axis.
///
/// Node (i, j) sits at (i/n, j/n). Coordinates are formed as i/n rather than
/// i*h so that the far edge lands on exactly 1.0 for every n.
class GridSpec {
public:
    explicit GridSpec(int n);

    int n() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    int points_per_axis() const noexcept { return n_ + 1; }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1);
    }

    bool contains(int i, int j) const noexcept { return i >= 0 && j >= 0 && i <= n_ && j <= n_; }
    bool contains(GridIndex p) const noexcept { return contains(p.i, p.j); }

    // Row-major: index = i*(n+1) + j.
    std::size_t flat(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) +
               static_cast<std::size_t>(j);
    }
    std::size_t flat(GridIndex p) const noexcept { return flat(p.i, p.j); }
    GridIndex unflat(std::size_t k) const noexcept {
        return {static_cast<int>(k / static_cast<std::size_t>(n_ + 1)),
                static_cast<int>(k % static_cast<std::size_t>(n_ + 1))};
    }

    double x(int i) const noexcept { return static_cast<double>(i) / n_; }
    double y(int j) const noexcept { return static_cast<double>(j) / n_; }

    bool operator==(const GridSpec&) const = default;

private:
    int n_;
    double h_;
};

class InvalidSpeedError : public std::invalid_argument {
public:
    InvalidSpeedError(GridIndex where, double value);

    GridIndex where() const noexcept { return where_; }
    double value() const noexcept { return value_; }

private:
    GridIndex where_;
    double value_;
};

using SpeedSampler = std::function<double(double x, double y)>;

/// Sampled speed F_ij > 0 with cached empirical extremes.
class SpeedField {
public:
    /// Takes ownership of row-major samples; throws InvalidSpeedError on the
    /// first non-positive or non-finite entry.
    SpeedField(GridSpec spec, std::vector<double> samples);

    const GridSpec& spec() const noexcept { return spec_; }
    double at(int i, int j) const noexcept { return f_[spec_.flat(i, j)]; }
    double at(GridIndex p) const noexcept { return at(p.i, p.j); }
    std::span<const double> samples() const noexcept { return f_; }
    double f_min() const noexcept { return f_min_; }
    double f_max() const noexcept { return f_max_; }

private:
    GridSpec spec_;
    std::vector<double> f_;
    double f_min_;
    double f_max_;
};

SpeedField make_speed_field(const GridSpec& spec, const SpeedSampler& sampler);

/// The discrete source set. Values there are pinned to zero.
class BoundarySet {
public:
    /// Sorts and deduplicates; throws std::invalid_argument when empty or
    /// when an index falls outside the lattice.
    BoundarySet(const GridSpec& spec, std::vector<GridIndex> points);

    std::span<const GridIndex> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

    /// Dense membership mask in row-major order.
    const std::vector<bool>& mask() const noexcept { return mask_; }
    bool contains(int i, int j) const noexcept;

    static BoundarySet all(const GridSpec& spec);

private:
    GridSpec spec_;
    std::vector<GridIndex> points_;
    std::vector<bool> mask_;
};

/// Values over the (n+1)^2 lattice; reads off the lattice yield +inf.
class GridFunction {
public:
    explicit GridFunction(GridSpec spec, double fill = kInfinity);
    GridFunction(GridSpec spec, std::vector<double> values);

    const GridSpec& spec() const noexcept { return spec_; }

    double at(int i, int j) const noexcept {
        return spec_.contains(i, j) ? values_[spec_.flat(i, j)] : kInfinity;
    }
    double at(GridIndex p) const noexcept { return at(p.i, p.j); }
    void set(int i, int j, double v) noexcept { values_[spec_.flat(i, j)] = v; }
    void set(GridIndex p, double v) noexcept { set(p.i, p.j, v); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    GridFunction scaled(double theta) const;
    GridFunction shifted(double offset) const;

private:
    GridSpec spec_;
    std::vector<double> values_;
};

struct NeighborValues {
    double left;
    double right;
    double down;
    double up;
};

NeighborValues neighbor_values(const GridFunction& t, int i, int j) noexcept;

/// max |a - b| over the lattice; equal infinities count as zero difference.
double max_abs_difference(const GridFunction& a, const GridFunction& b);

}  // namespace fmm
