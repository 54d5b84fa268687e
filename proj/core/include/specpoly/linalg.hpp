#pragma once

#include <span>
#include <vector>

#include "specpoly/errors.hpp"

namespace specpoly {

using Index = int;

/// Tolerances used throughout. All are relative to the scale of the data
/// being tested, with max(1, scale) floors where noted at the use site.
struct Tol {
    double eps_rank = 1e-9;  ///< singular/eigenvalue threshold for kernels
    double eps_psd = 1e-8;   ///< minimum-eigenvalue slack for PSD tests
    double eps_orth = 1e-10; ///< orthonormality defect / eigensolver target
    double eps_zero = 1e-8;  ///< entrywise zero test for block structure
};

/// Dense real matrix, row-major.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(Index rows, Index cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}
    Mat(Index rows, Index cols, std::vector<double> entries);

    static Mat identity(Index n);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    double& operator()(Index i, Index j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(Index i, Index j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<double>& entries() const { return a_; }

    Mat transposed() const;
    Mat operator*(const Mat& rhs) const;
    Mat operator+(const Mat& rhs) const;
    Mat operator-(const Mat& rhs) const;
    Mat scaled(double s) const;

    std::vector<double> col(Index j) const;
    std::vector<double> row(Index i) const;

    /// Horizontal concatenation [this | rhs]; row counts must agree.
    Mat hcat(const Mat& rhs) const;
    /// Vertical concatenation.
    Mat vcat(const Mat& rhs) const;

    double frob_norm() const;
    double max_abs() const;

    static Mat from_cols(Index rows, const std::vector<std::vector<double>>& cols);

private:
    Index rows_, cols_;
    std::vector<double> a_;
};

std::vector<double> matvec(const Mat& m, std::span<const double> x);

/// Symmetric matrix of order n; symmetrized on ingest so that a_ij == a_ji
/// holds exactly.
class SymMat {
public:
    SymMat() : n_(0) {}
    explicit SymMat(Index n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}
    /// Builds from row-major entries of an n x n matrix, averaging the
    /// off-diagonal pairs.
    SymMat(Index n, std::span<const double> entries);

    static SymMat identity(Index n);
    static SymMat diag(std::span<const double> d);
    /// m must be square; symmetrizes.
    static SymMat from_mat(const Mat& m);

    Index order() const { return n_; }

    double operator()(Index i, Index j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    /// Sets both (i,j) and (j,i).
    void set(Index i, Index j, double v);

    Mat to_mat() const;
    double frob_norm() const;
    double max_abs() const;

    SymMat operator+(const SymMat& rhs) const;
    SymMat operator-(const SymMat& rhs) const;
    SymMat scaled(double s) const;

    /// Symmetry defect of the raw entries this was built from is zero by
    /// construction; this measures |a_ij - a_ji| of an arbitrary square Mat.
    static double symmetry_defect(const Mat& m);

private:
    Index n_;
    std::vector<double> a_;
};

/// Subspace of R^ambient given by an orthonormal column basis (possibly with
/// zero columns, i.e. the zero subspace).
class Subspace {
public:
    Subspace() : ambient_(0), basis_(0, 0) {}
    Subspace(Index ambient, Mat basis);

    static Subspace full(Index ambient);
    static Subspace zero(Index ambient);

    Index ambient() const { return ambient_; }
    Index dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }

    /// Orthogonal projector B B^T.
    Mat projector() const;
    /// True when v lies in the subspace: ||(I - BB^T) v|| <= tol * ||v||.
    bool contains(std::span<const double> v, double tol) const;

private:
    Index ambient_;
    Mat basis_;
};

struct EigResult {
    std::vector<double> values; ///< ascending
    Mat vectors;                ///< orthonormal columns, vectors.col(i) pairs with values[i]
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Converges when the off-diagonal Frobenius norm drops below
/// eps_orth * ||a||_F. Throws NumericFailureError beyond the sweep cap.
EigResult sym_eig(const SymMat& a, const Tol& tol);

double min_eigenvalue(const SymMat& a, const Tol& tol);

/// Lower-triangular L with L a L^T = I for positive definite a.
/// Throws NotPositiveDefiniteError (with the offending eigenvalue) when
/// lambda_min(a) <= eps_psd.
Mat cholesky_inverse(const SymMat& a, const Tol& tol);

/// a b - b a. Throws DimensionError on order mismatch.
Mat commutator(const SymMat& a, const SymMat& b);

/// Orthonormal basis of {v : ||m v|| <= eps_rank * ||m||_F * ||v||},
/// computed from the eigendecomposition of m^T m. The zero matrix yields the
/// full ambient space.
Subspace kernel_basis(const Mat& m, const Tol& tol);

/// Orthonormal basis of the column space of m (complement of ker m^T).
Subspace column_space(const Mat& m, const Tol& tol);

/// Intersection of subspaces of R^ambient, computed as the kernel of the sum
/// of orthogonal-complement projectors sum_i (I - P_i). An empty sequence
/// yields the full space.
Subspace intersect(Index ambient, std::span<const Subspace> subspaces, const Tol& tol);

/// Orthogonal complement.
Subspace complement(const Subspace& s, const Tol& tol);

/// lambda_min(a) >= -eps_psd * max(1, ||a||_F).
bool is_psd(const SymMat& a, const Tol& tol);

/// Numerical rank: number of singular values above eps_rank * ||m||_F.
Index rank(const Mat& m, const Tol& tol);

} // namespace specpoly
