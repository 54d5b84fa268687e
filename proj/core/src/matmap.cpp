#include "specpoly/matmap.hpp"

#include <cmath>

namespace specpoly {

MatrixMap::MatrixMap(std::vector<SymMat> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) throw DimensionError("MatrixMap: needs at least one basis matrix");
    dim_ = static_cast<Index>(basis_.size());
    order_ = basis_.front().order();
    for (const SymMat& a : basis_)
        if (a.order() != order_) throw DimensionError("MatrixMap: mixed orders");
}

SymMat MatrixMap::evaluate(std::span<const double> x) const {
    if (static_cast<Index>(x.size()) != dim_)
        throw DimensionError("MatrixMap::evaluate: coordinate length mismatch");
    SymMat r(order_);
    for (Index k = 0; k < dim_; ++k) {
        if (x[k] == 0.0) continue;
        r = r + basis_[k].scaled(x[k]);
    }
    return r;
}

double MatrixMap::scale() const {
    double s = 0.0;
    for (const SymMat& a : basis_) s += a.frob_norm();
    return s;
}

MatrixMap congruence(const MatrixMap& map, const Mat& m, const Tol& tol) {
    if (m.rows() != map.order() || m.cols() != map.order())
        throw DimensionError("congruence: transform must be n x n");
    if (map.order() > 0) {
        // smallest singular value via m^T m
        EigResult eig = sym_eig(SymMat::from_mat(m.transposed() * m), tol);
        double smin = std::sqrt(std::max(eig.values.front(), 0.0));
        if (smin <= tol.eps_rank * m.frob_norm())
            throw SingularMatrixError("congruence: transform is numerically singular");
    }
    Mat mt = m.transposed();
    std::vector<SymMat> basis;
    basis.reserve(map.dim());
    for (const SymMat& a : map.basis())
        basis.push_back(SymMat::from_mat(m * a.to_mat() * mt));
    return MatrixMap(std::move(basis));
}

MatrixMap homogenize(const SymMat& constant, std::span<const SymMat> linear) {
    std::vector<SymMat> basis;
    basis.reserve(linear.size() + 1);
    for (const SymMat& a : linear) {
        if (a.order() != constant.order())
            throw DimensionError("homogenize: order mismatch");
        basis.push_back(a);
    }
    basis.push_back(constant);
    return MatrixMap(std::move(basis));
}

MatrixMap restrict_domain(const MatrixMap& map, const Mat& b, const Tol& tol) {
    if (b.rows() != map.dim())
        throw DimensionError("restrict_domain: basis must have d rows");
    if (b.cols() < 1) throw DimensionError("restrict_domain: empty basis");
    if (rank(b, tol) < b.cols())
        throw SingularMatrixError("restrict_domain: basis is rank deficient");
    std::vector<SymMat> basis;
    basis.reserve(b.cols());
    for (Index j = 0; j < b.cols(); ++j) {
        SymMat aj(map.order());
        for (Index i = 0; i < map.dim(); ++i) {
            if (b(i, j) == 0.0) continue;
            aj = aj + map.basis(i).scaled(b(i, j));
        }
        basis.push_back(std::move(aj));
    }
    return MatrixMap(std::move(basis));
}

MatrixMap restrict_codomain(const MatrixMap& map, const Subspace& w) {
    if (w.ambient() != map.order())
        throw DimensionError("restrict_codomain: ambient mismatch");
    const Mat& W = w.basis();
    Mat Wt = W.transposed();
    std::vector<SymMat> basis;
    basis.reserve(map.dim());
    for (const SymMat& a : map.basis())
        basis.push_back(SymMat::from_mat(Wt * a.to_mat() * W));
    return MatrixMap(std::move(basis));
}

Subspace lineality_space(const MatrixMap& map, const Tol& tol) {
    const Index n = map.order();
    const Index d = map.dim();
    const Index rows = n * (n + 1) / 2;
    Mat stack(rows, d);
    for (Index k = 0; k < d; ++k) {
        Index r = 0;
        for (Index i = 0; i < n; ++i)
            for (Index j = i; j < n; ++j) stack(r++, k) = map.basis(k)(i, j);
    }
    return kernel_basis(stack, tol);
}

} // namespace specpoly
