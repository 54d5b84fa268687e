#pragma once

#include <span>
#include <vector>

#include "specpoly/linalg.hpp"

namespace specpoly {

/// Linear symmetric matrix map x -> x_1 A_1 + ... + x_d A_d of order n.
class MatrixMap {
public:
    /// All basis matrices must share one order; d >= 1.
    explicit MatrixMap(std::vector<SymMat> basis);

    Index order() const { return order_; }
    Index dim() const { return dim_; }
    const std::vector<SymMat>& basis() const { return basis_; }
    const SymMat& basis(Index i) const { return basis_[i]; }

    SymMat evaluate(std::span<const double> x) const;

    /// sum_i ||A_i||_F, the natural scale of the map.
    double scale() const;

private:
    Index order_, dim_;
    std::vector<SymMat> basis_;
};

struct CongruenceRecord {
    Mat m;                     ///< accumulated transform; rows may be < cols after codomain restriction
    bool is_orthogonal = false;
};

/// Map with basis m A_i m^T. Throws SingularMatrixError when the smallest
/// singular value of m is <= eps_rank * ||m||.
MatrixMap congruence(const MatrixMap& map, const Mat& m, const Tol& tol);

/// Turns the affine map A_0 + x_1 A_1 + ... + x_{d-1} A_{d-1} into the cone
/// map with basis (A_1, ..., A_{d-1}, A_0): evaluating at (x, 1) recovers the
/// affine map at x.
MatrixMap homogenize(const SymMat& constant, std::span<const SymMat> linear);

/// Map z -> A(b z); b is d x k with full column rank.
MatrixMap restrict_domain(const MatrixMap& map, const Mat& b, const Tol& tol);

/// Map with basis W^T A_i W for the orthonormal basis W of w.
MatrixMap restrict_codomain(const MatrixMap& map, const Subspace& w);

/// {x : A(x) = 0}, the lineality space of {x : A(x) >= 0}. Computed as the
/// kernel of the n(n+1)/2 x d matrix whose columns stack the upper triangles
/// of the basis matrices.
Subspace lineality_space(const MatrixMap& map, const Tol& tol);

} // namespace specpoly
