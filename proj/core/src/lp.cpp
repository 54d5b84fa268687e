#include "specpoly/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specpoly {

namespace {

constexpr double kReducedCostTol = 1e-10;
constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kMaxPivots = 50000;

struct Tableau {
    int m = 0, ncols = 0;
    std::vector<std::vector<double>> t; // m x (ncols+1), last column = rhs
    std::vector<int> basis;             // column index in basis for each row

    double& rhs(int i) { return t[i][ncols]; }
};

// Bland's rule primal simplex on the current tableau. cost[j] is the
// objective coefficient (maximization); columns with allowed[j] == false are
// never chosen as entering.
LpStatus run_simplex(Tableau& tab, const std::vector<double>& cost,
                     const std::vector<bool>& allowed) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
        // reduced costs r_j = c_j - c_B . T_j
        int enter = -1;
        for (int j = 0; j < tab.ncols; ++j) {
            if (!allowed[j]) continue;
            bool in_basis = false;
            for (int i = 0; i < tab.m; ++i)
                if (tab.basis[i] == j) { in_basis = true; break; }
            if (in_basis) continue;
            double r = cost[j];
            for (int i = 0; i < tab.m; ++i) r -= cost[tab.basis[i]] * tab.t[i][j];
            if (r > kReducedCostTol) { enter = j; break; } // lowest index
        }
        if (enter < 0) return LpStatus::Optimal;

        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < tab.m; ++i) {
            double piv = tab.t[i][enter];
            if (piv > kPivotTol) {
                double ratio = tab.rhs(i) / piv;
                if (ratio < best - 1e-14 ||
                    (std::abs(ratio - best) <= 1e-14 &&
                     (leave < 0 || tab.basis[i] < tab.basis[leave]))) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) return LpStatus::Unbounded;

        double piv = tab.t[leave][enter];
        for (double& v : tab.t[leave]) v /= piv;
        for (int i = 0; i < tab.m; ++i) {
            if (i == leave) continue;
            double f = tab.t[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= tab.ncols; ++j) tab.t[i][j] -= f * tab.t[leave][j];
        }
        tab.basis[leave] = enter;
    }
    return LpStatus::IterationLimit;
}

} // namespace

LpResult lp_solve(const std::vector<LpRow>& rows, std::span<const double> c) {
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(c.size());
    for (const LpRow& r : rows)
        if (static_cast<int>(r.a.size()) != n)
            throw DimensionError("lp_solve: row length mismatch");

    // Count auxiliary columns. Rows are normalized to b >= 0 first.
    int n_slack = 0, n_art = 0;
    std::vector<int> kind(m); // 0: <= (slack), 1: >= (surplus+art), 2: == (art)
    for (int i = 0; i < m; ++i) {
        bool flip = rows[i].b < 0.0;
        if (rows[i].equality) {
            kind[i] = 2;
            ++n_art;
        } else if (flip) {
            kind[i] = 1; // flipped <= becomes >=
            ++n_slack;
            ++n_art;
        } else {
            kind[i] = 0;
            ++n_slack;
        }
    }

    Tableau tab;
    tab.m = m;
    tab.ncols = n + n_slack + n_art;
    tab.t.assign(m, std::vector<double>(tab.ncols + 1, 0.0));
    tab.basis.assign(m, -1);

    int slack_at = n, art_at = n + n_slack;
    std::vector<bool> is_art(tab.ncols, false);
    for (int i = 0; i < m; ++i) {
        double sgn = rows[i].b < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) tab.t[i][j] = sgn * rows[i].a[j];
        tab.rhs(i) = sgn * rows[i].b;
        if (kind[i] == 0) {
            tab.t[i][slack_at] = 1.0;
            tab.basis[i] = slack_at++;
        } else if (kind[i] == 1) {
            tab.t[i][slack_at] = -1.0; // surplus
            ++slack_at;
            tab.t[i][art_at] = 1.0;
            is_art[art_at] = true;
            tab.basis[i] = art_at++;
        } else {
            tab.t[i][art_at] = 1.0;
            is_art[art_at] = true;
            tab.basis[i] = art_at++;
        }
    }

    LpResult res;

    if (n_art > 0) {
        // Phase 1: maximize -(sum of artificials).
        std::vector<double> cost1(tab.ncols, 0.0);
        for (int j = 0; j < tab.ncols; ++j)
            if (is_art[j]) cost1[j] = -1.0;
        std::vector<bool> allowed(tab.ncols, true);
        LpStatus st = run_simplex(tab, cost1, allowed);
        if (st == LpStatus::IterationLimit) {
            res.status = st;
            return res;
        }
        double art_sum = 0.0;
        for (int i = 0; i < m; ++i)
            if (is_art[tab.basis[i]]) art_sum += tab.rhs(i);
        res.infeasibility = std::max(art_sum, 0.0);
        if (art_sum > kFeasTol) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // Drive remaining (zero-valued) artificials out where possible.
        for (int i = 0; i < m; ++i) {
            if (!is_art[tab.basis[i]]) continue;
            int enter = -1;
            for (int j = 0; j < n + n_slack; ++j)
                if (std::abs(tab.t[i][j]) > 1e-8) { enter = j; break; }
            if (enter < 0) continue; // redundant row; artificial stays at 0
            double piv = tab.t[i][enter];
            for (double& v : tab.t[i]) v /= piv;
            for (int r = 0; r < m; ++r) {
                if (r == i) continue;
                double f = tab.t[r][enter];
                if (f == 0.0) continue;
                for (int j = 0; j <= tab.ncols; ++j) tab.t[r][j] -= f * tab.t[i][j];
            }
            tab.basis[i] = enter;
        }
    }

    // Phase 2.
    std::vector<double> cost2(tab.ncols, 0.0);
    for (int j = 0; j < n; ++j) cost2[j] = c[j];
    std::vector<bool> allowed(tab.ncols, true);
    for (int j = 0; j < tab.ncols; ++j)
        if (is_art[j]) allowed[j] = false;
    LpStatus st = run_simplex(tab, cost2, allowed);
    res.status = st;
    if (st != LpStatus::Optimal) return res;

    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.rhs(i);
    res.objective = 0.0;
    for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

double cone_residual(std::span<const double> y,
                     const std::vector<std::vector<double>>& rays,
                     const Mat& lineality_basis) {
    const int k = static_cast<int>(y.size());
    double ny = 0.0;
    for (double v : y) ny += v * v;
    ny = std::sqrt(ny);
    if (ny == 0.0) return 0.0;

    const int nr = static_cast<int>(rays.size());
    const int nl = lineality_basis.cols();
    const int n = nr + 2 * nl; // lambda, mu+, mu-
    std::vector<LpRow> lrows(k);
    for (int i = 0; i < k; ++i) {
        lrows[i].a.assign(n, 0.0);
        for (int j = 0; j < nr; ++j) lrows[i].a[j] = rays[j][i];
        for (int j = 0; j < nl; ++j) {
            lrows[i].a[nr + j] = lineality_basis(i, j);
            lrows[i].a[nr + nl + j] = -lineality_basis(i, j);
        }
        lrows[i].b = y[i] / ny;
        lrows[i].equality = true;
    }
    std::vector<double> c(n, 0.0);
    LpResult res = lp_solve(lrows, c);
    if (res.status == LpStatus::Optimal) return 0.0;
    if (res.status == LpStatus::Infeasible) return res.infeasibility;
    return std::numeric_limits<double>::infinity();
}

bool in_generated_cone(std::span<const double> y,
                       const std::vector<std::vector<double>>& rays,
                       const Mat& lineality_basis, double tol) {
    return cone_residual(y, rays, lineality_basis) <= tol;
}

} // namespace specpoly
