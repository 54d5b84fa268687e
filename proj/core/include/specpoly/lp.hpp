#pragma once

#include <span>
#include <vector>

#include "specpoly/linalg.hpp"

namespace specpoly {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpRow {
    std::vector<double> a;
    double b = 0.0;
    bool equality = false; ///< false: a.x <= b, true: a.x == b
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x; ///< structural variable values
    double objective = 0.0;
    double infeasibility = 0.0; ///< phase-1 residual (0 when feasible)
};

/// Dense two-phase primal simplex with Bland's rule:
/// maximize c.x subject to the rows, x >= 0.
LpResult lp_solve(const std::vector<LpRow>& rows, std::span<const double> c);

/// Least attainable sum of absolute equation residuals when writing y as a
/// non-negative combination of rays plus an arbitrary combination of the
/// lineality basis columns. y is normalized internally.
double cone_residual(std::span<const double> y,
                     const std::vector<std::vector<double>>& rays,
                     const Mat& lineality_basis);

/// cone_residual <= tol.
bool in_generated_cone(std::span<const double> y,
                       const std::vector<std::vector<double>>& rays,
                       const Mat& lineality_basis, double tol);

} // namespace specpoly
