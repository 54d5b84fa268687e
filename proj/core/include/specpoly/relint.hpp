#pragma once

#include <optional>
#include <span>
#include <vector>

#include "specpoly/matmap.hpp"
#include "specpoly/rng.hpp"

namespace specpoly {

struct MaxMinEigResult {
    /// Maximum of lambda_min(A(x)) over the unit ball (= max(0, sphere max)).
    double t_star = 0.0;
    /// Best unit-sphere point found.
    std::vector<double> x_star;
    /// lambda_min(A(x_star)).
    double lambda_at_x_star = 0.0;
    /// Outer bound from the cutting-plane master problem.
    double upper_bound = 0.0;
    int cuts = 0;
    bool converged = false;
};

/// Maximizes the concave function lambda_min(A(x)) over the unit ball by a
/// Kelley cutting-plane scheme: objective cuts v^T A(x) v from minimal
/// eigenvectors, ball cuts g^T x <= 1 added outer-approximately, master
/// problems solved by dense simplex. Throws SolverFailureError (carrying the
/// remaining gap) when the bracket is still wider than eps_psd at the
/// iteration cap.
MaxMinEigResult max_min_eig(const MatrixMap& map, int max_iters, const Tol& tol, Rng& rng);

enum class ConeKind {
    Regular,      ///< reduced to a unital presentation with interior point
    TrivialPoint, ///< S = {0}
    FullSubspace, ///< A vanishes on the reduced domain; S is a linear subspace
};

/// Output of facial reduction: S = { domain_basis . z : reduced_map(z) >= 0 },
/// with reduced_map unital at interior_point for the Regular kind.
struct ReducedPresentation {
    ConeKind kind = ConeKind::Regular;
    std::optional<MatrixMap> reduced_map;
    Mat domain_basis;                  ///< d x k, orthonormal columns
    std::vector<double> interior_point; ///< k entries (Regular only)
    CongruenceRecord codomain_transform; ///< n' x n composite (restrictions + Cholesky)
    Index common_kernel_dim = 0;
    bool borderline = false;
    int rounds = 0;
};

struct FacialReduceOptions {
    int max_iters = 400; ///< cutting-plane iterations per round
    int restarts = 6;    ///< perturbed restarts used to average toward the relative interior
    std::optional<std::vector<double>> interior_point; ///< known relative-interior point
};

/// Iterative facial reduction: while the current map is not strictly
/// feasible, accumulate the kernel at a relative-interior candidate, restrict
/// the codomain to its complement and the domain to {x : A(x) K = 0}, then
/// unitalize at the found interior point. Terminates in at most n rounds.
ReducedPresentation facial_reduce(const MatrixMap& map, const Tol& tol, Rng& rng,
                                  const FacialReduceOptions& options = {});

/// Congruence by the Cholesky inverse of A(p): the result evaluates to the
/// identity at p. Throws NotPositiveDefiniteError when A(p) is not PD.
std::pair<MatrixMap, CongruenceRecord> make_unital(const MatrixMap& map,
                                                   std::span<const double> p, const Tol& tol);

} // namespace specpoly
