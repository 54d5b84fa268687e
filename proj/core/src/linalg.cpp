#include "specpoly/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specpoly {

Mat::Mat(Index rows, Index cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(rows) * cols)
        throw DimensionError("Mat: entry count does not match rows*cols");
    for (double v : a_)
        if (!std::isfinite(v)) throw DimensionError("Mat: non-finite entry");
}

Mat Mat::identity(Index n) {
    Mat m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionError("Mat multiply: inner dimensions differ");
    Mat r(rows_, rhs.cols_);
    for (Index i = 0; i < rows_; ++i)
        for (Index k = 0; k < cols_; ++k) {
            double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (Index j = 0; j < rhs.cols_; ++j) r(i, j) += aik * rhs(k, j);
        }
    return r;
}

Mat Mat::operator+(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("Mat add: shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += rhs.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("Mat sub: shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= rhs.a_[i];
    return r;
}

Mat Mat::scaled(double s) const {
    Mat r = *this;
    for (double& v : r.a_) v *= s;
    return r;
}

std::vector<double> Mat::col(Index j) const {
    std::vector<double> c(rows_);
    for (Index i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<double> Mat::row(Index i) const {
    std::vector<double> r(cols_);
    for (Index j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

Mat Mat::hcat(const Mat& rhs) const {
    if (rows_ != rhs.rows_) throw DimensionError("hcat: row counts differ");
    Mat r(rows_, cols_ + rhs.cols_);
    for (Index i = 0; i < rows_; ++i) {
        for (Index j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (Index j = 0; j < rhs.cols_; ++j) r(i, cols_ + j) = rhs(i, j);
    }
    return r;
}

Mat Mat::vcat(const Mat& rhs) const {
    if (cols_ != rhs.cols_) throw DimensionError("vcat: column counts differ");
    Mat r(rows_ + rhs.rows_, cols_);
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (Index i = 0; i < rhs.rows_; ++i)
        for (Index j = 0; j < cols_; ++j) r(rows_ + i, j) = rhs(i, j);
    return r;
}

double Mat::frob_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double Mat::max_abs() const {
    double s = 0.0;
    for (double v : a_) s = std::max(s, std::abs(v));
    return s;
}

Mat Mat::from_cols(Index rows, const std::vector<std::vector<double>>& cols) {
    Mat r(rows, static_cast<Index>(cols.size()));
    for (Index j = 0; j < r.cols(); ++j) {
        if (static_cast<Index>(cols[j].size()) != rows)
            throw DimensionError("from_cols: column length mismatch");
        for (Index i = 0; i < rows; ++i) r(i, j) = cols[j][i];
    }
    return r;
}

std::vector<double> matvec(const Mat& m, std::span<const double> x) {
    if (static_cast<Index>(x.size()) != m.cols())
        throw DimensionError("matvec: length mismatch");
    std::vector<double> y(m.rows(), 0.0);
    for (Index i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (Index j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

SymMat::SymMat(Index n, std::span<const double> entries) : n_(n), a_(static_cast<size_t>(n) * n) {
    if (entries.size() != static_cast<size_t>(n) * n)
        throw DimensionError("SymMat: entry count does not match order");
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            double v = 0.5 * (entries[static_cast<size_t>(i) * n + j] + entries[static_cast<size_t>(j) * n + i]);
            a_[static_cast<size_t>(i) * n + j] = v;
        }
}

SymMat SymMat::identity(Index n) {
    SymMat m(n);
    for (Index i = 0; i < n; ++i) m.a_[static_cast<size_t>(i) * n + i] = 1.0;
    return m;
}

SymMat SymMat::diag(std::span<const double> d) {
    SymMat m(static_cast<Index>(d.size()));
    for (Index i = 0; i < m.n_; ++i) m.a_[static_cast<size_t>(i) * m.n_ + i] = d[i];
    return m;
}

SymMat SymMat::from_mat(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionError("SymMat::from_mat: not square");
    return SymMat(m.rows(), m.entries());
}

void SymMat::set(Index i, Index j, double v) {
    a_[static_cast<size_t>(i) * n_ + j] = v;
    a_[static_cast<size_t>(j) * n_ + i] = v;
}

Mat SymMat::to_mat() const {
    Mat m(n_, n_);
    for (Index i = 0; i < n_; ++i)
        for (Index j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double SymMat::frob_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double SymMat::max_abs() const {
    double s = 0.0;
    for (double v : a_) s = std::max(s, std::abs(v));
    return s;
}

SymMat SymMat::operator+(const SymMat& rhs) const {
    if (n_ != rhs.n_) throw DimensionError("SymMat add: order mismatch");
    SymMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += rhs.a_[i];
    return r;
}

SymMat SymMat::operator-(const SymMat& rhs) const {
    if (n_ != rhs.n_) throw DimensionError("SymMat sub: order mismatch");
    SymMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= rhs.a_[i];
    return r;
}

SymMat SymMat::scaled(double s) const {
    SymMat r = *this;
    for (double& v : r.a_) v *= s;
    return r;
}

double SymMat::symmetry_defect(const Mat& m) {
    double d = 0.0;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - m(j, i)));
    return d;
}

Subspace::Subspace(Index ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_) throw DimensionError("Subspace: basis row count != ambient");
}

Subspace Subspace::full(Index ambient) { return Subspace(ambient, Mat::identity(ambient)); }

Subspace Subspace::zero(Index ambient) { return Subspace(ambient, Mat(ambient, 0)); }

Mat Subspace::projector() const { return basis_ * basis_.transposed(); }

bool Subspace::contains(std::span<const double> v, double tol) const {
    if (static_cast<Index>(v.size()) != ambient_) throw DimensionError("contains: length mismatch");
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv == 0.0) return true;
    // residual = v - B (B^T v)
    std::vector<double> bt(basis_.cols(), 0.0);
    for (Index j = 0; j < basis_.cols(); ++j) {
        double s = 0.0;
        for (Index i = 0; i < ambient_; ++i) s += basis_(i, j) * v[i];
        bt[j] = s;
    }
    double res = 0.0;
    for (Index i = 0; i < ambient_; ++i) {
        double s = v[i];
        for (Index j = 0; j < basis_.cols(); ++j) s -= basis_(i, j) * bt[j];
        res += s * s;
    }
    return std::sqrt(res) <= tol * nv;
}

namespace {

constexpr int kMaxJacobiSweeps = 64;

double offdiag_norm(const Mat& a) {
    double s = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

EigResult sym_eig(const SymMat& a, const Tol& tol) {
    const Index n = a.order();
    if (n == 0) return {{}, Mat(0, 0)};

    Mat A = a.to_mat();
    Mat V = Mat::identity(n);
    const double scale = a.frob_norm();
    if (scale == 0.0) return {std::vector<double>(n, 0.0), V};

    const double target = std::max(tol.eps_orth * scale, 1e-300);
    bool converged = false;
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (offdiag_norm(A) <= target) {
            converged = true;
            break;
        }
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) {
                    A(p, q) = A(q, p) = 0.0;
                    continue;
                }
                double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);

                double app = A(p, p), aqq = A(q, q);
                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = A(q, p) = 0.0;
                for (Index r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        double arp = A(r, p), arq = A(r, q);
                        A(r, p) = A(p, r) = arp - s * (arq + tau * arp);
                        A(r, q) = A(q, r) = arq + s * (arp - tau * arq);
                    }
                    double vrp = V(r, p), vrq = V(r, q);
                    V(r, p) = vrp - s * (vrq + tau * vrp);
                    V(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    if (!converged && offdiag_norm(A) > target)
        throw NumericFailureError("sym_eig: Jacobi sweeps did not converge");

    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index i, Index j) { return A(i, i) < A(j, j); });

    EigResult r;
    r.values.resize(n);
    r.vectors = Mat(n, n);
    for (Index k = 0; k < n; ++k) {
        r.values[k] = A(order[k], order[k]);
        for (Index i = 0; i < n; ++i) r.vectors(i, k) = V(i, order[k]);
    }
    return r;
}

double min_eigenvalue(const SymMat& a, const Tol& tol) {
    if (a.order() == 0) return 0.0;
    return sym_eig(a, tol).values.front();
}

Mat cholesky_inverse(const SymMat& a, const Tol& tol) {
    const Index n = a.order();
    if (n == 0) return Mat(0, 0);
    double lmin = min_eigenvalue(a, tol);
    if (lmin <= tol.eps_psd)
        throw NotPositiveDefiniteError("cholesky_inverse: matrix not positive definite", lmin);

    // a = C C^T, C lower triangular.
    Mat C(n, n);
    for (Index j = 0; j < n; ++j) {
        double d = a(j, j);
        for (Index k = 0; k < j; ++k) d -= C(j, k) * C(j, k);
        if (d <= 0.0)
            throw NotPositiveDefiniteError("cholesky_inverse: pivot not positive", d);
        C(j, j) = std::sqrt(d);
        for (Index i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (Index k = 0; k < j; ++k) s -= C(i, k) * C(j, k);
            C(i, j) = s / C(j, j);
        }
    }
    // L = C^{-1} by forward substitution, also lower triangular.
    Mat L(n, n);
    for (Index i = 0; i < n; ++i) {
        L(i, i) = 1.0 / C(i, i);
        for (Index j = 0; j < i; ++j) {
            double s = 0.0;
            for (Index k = j; k < i; ++k) s += C(i, k) * L(k, j);
            L(i, j) = -s / C(i, i);
        }
    }
    return L;
}

Mat commutator(const SymMat& a, const SymMat& b) {
    if (a.order() != b.order()) throw DimensionError("commutator: order mismatch");
    Mat am = a.to_mat(), bm = b.to_mat();
    return am * bm - bm * am;
}

Subspace kernel_basis(const Mat& m, const Tol& tol) {
    const Index c = m.cols();
    const double nm = m.frob_norm();
    if (m.rows() == 0 || nm == 0.0) return Subspace::full(c);

    SymMat g = SymMat::from_mat(m.transposed() * m);
    EigResult eig = sym_eig(g, tol);
    const double thr = tol.eps_rank * nm;
    Index k = 0;
    while (k < c && std::sqrt(std::max(eig.values[k], 0.0)) <= thr) ++k;

    Mat basis(c, k);
    for (Index j = 0; j < k; ++j)
        for (Index i = 0; i < c; ++i) basis(i, j) = eig.vectors(i, j);
    return Subspace(c, std::move(basis));
}

Subspace column_space(const Mat& m, const Tol& tol) {
    const Index r = m.rows();
    const double nm = m.frob_norm();
    if (m.cols() == 0 || nm == 0.0) return Subspace::zero(r);

    SymMat g = SymMat::from_mat(m * m.transposed());
    EigResult eig = sym_eig(g, tol);
    const double thr = tol.eps_rank * nm;
    // eigenvalues ascending: column space spanned by the top block
    Index first = 0;
    while (first < r && std::sqrt(std::max(eig.values[first], 0.0)) <= thr) ++first;
    Mat basis(r, r - first);
    for (Index j = first; j < r; ++j)
        for (Index i = 0; i < r; ++i) basis(i, j - first) = eig.vectors(i, j);
    return Subspace(r, std::move(basis));
}

Subspace intersect(Index ambient, std::span<const Subspace> subspaces, const Tol& tol) {
    if (subspaces.empty()) return Subspace::full(ambient);
    for (const Subspace& s : subspaces)
        if (s.ambient() != ambient) throw DimensionError("intersect: ambient mismatch");

    // sum_i (I - P_i): PSD, kernel = intersection of the subspaces.
    Mat sum(ambient, ambient);
    for (const Subspace& s : subspaces) {
        Mat p = s.projector();
        for (Index i = 0; i < ambient; ++i)
            for (Index j = 0; j < ambient; ++j)
                sum(i, j) += (i == j ? 1.0 : 0.0) - p(i, j);
    }
    return kernel_basis(sum, tol);
}

Subspace complement(const Subspace& s, const Tol& tol) {
    const Index n = s.ambient();
    if (s.dim() == 0) return Subspace::full(n);
    if (s.dim() == n) return Subspace::zero(n);

    SymMat p = SymMat::from_mat(s.projector());
    EigResult eig = sym_eig(p, tol);
    // projector eigenvalues cluster at {0,1}; complement = the 0-cluster
    const Index k = n - s.dim();
    Mat basis(n, k);
    for (Index j = 0; j < k; ++j)
        for (Index i = 0; i < n; ++i) basis(i, j) = eig.vectors(i, j);
    return Subspace(n, std::move(basis));
}

bool is_psd(const SymMat& a, const Tol& tol) {
    if (a.order() == 0) return true;
    double lmin = min_eigenvalue(a, tol);
    return lmin >= -tol.eps_psd * std::max(1.0, a.frob_norm());
}

Index rank(const Mat& m, const Tol& tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const double nm = m.frob_norm();
    if (nm == 0.0) return 0;
    const bool wide = m.rows() >= m.cols();
    Mat g = wide ? m.transposed() * m : m * m.transposed();
    EigResult eig = sym_eig(SymMat::from_mat(g), tol);
    const double thr = tol.eps_rank * nm;
    Index r = 0;
    for (double v : eig.values)
        if (std::sqrt(std::max(v, 0.0)) > thr) ++r;
    return r;
}

} // namespace specpoly
