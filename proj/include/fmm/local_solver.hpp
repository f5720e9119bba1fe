#pragma once

#include <stdexcept>

#include "fmm/grid.hpp"

namespace fmm {

/// Inputs to the single-point upwind update.
///
/// `a` is the smaller of the two x-neighbours, `b` the smaller of the two
/// y-neighbours; either may be +inf. `h` is the grid spacing and `f` the
/// local speed.
struct LocalInputs {
    double a;
    double b;
    double h;
    double f;
};

class NoUpwindNeighborError : public std::domain_error {
public:
    NoUpwindNeighborError() : std::domain_error("local update needs at least one finite neighbour") {}
};

/// Solves
///   max(X - a, 0)^2 + max(X - b, 0)^2 = (h/f)^2
/// for X. With w = h/f: if |a - b| >= w the far direction drops out and
/// X = min(a, b) + w; otherwise X = (a + b + sqrt(2w^2 - (a-b)^2)) / 2.
double solve_local(const LocalInputs& in);

/// Brute-force minimum of s*a + t*b + (h/f)*sqrt(s^2 + t^2) over
/// s + t = 1, s = k/resolution. Terms with infinite coefficient are skipped
/// unless their weight is zero. Test oracle for solve_local.
double hopf_lax(const LocalInputs& in, int resolution);

/// Builds the update inputs for (i, j) from the current values of `t`.
LocalInputs gather_inputs(const GridFunction& t, const SpeedField& f, int i, int j) noexcept;

/// F_ij times the upwind gradient magnitude of `t` at (i, j). An exact
/// discrete solution has residual 1 at every interior point; subsolutions
/// are <= 1 and supersolutions >= 1. Positively homogeneous in `t`.
double residual(const GridFunction& t, const SpeedField& f, int i, int j);

}  // namespace fmm
