#include "specpoly/relint.hpp"

#include <algorithm>
#include <cmath>

#include "specpoly/lp.hpp"

namespace specpoly {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> normalized(std::span<const double> v) {
    std::vector<double> r(v.begin(), v.end());
    double n = norm2(v);
    if (n > 0.0)
        for (double& x : r) x /= n;
    return r;
}

struct KelleyState {
    double best_sphere = -std::numeric_limits<double>::infinity();
    std::vector<double> best_x; // unit
    double upper = std::numeric_limits<double>::infinity();
    int cuts = 0;
    bool converged = false;
};

// Maximize lambda_min(A(x)) + perturb.x over the unit ball (values in the
// scale of the given map). Objective cuts come from minimal eigenvectors;
// the ball is outer-approximated by supporting hyperplanes added on demand.
// Master variables are u = x + 1 (>= 0) and t = t+ - t-.
KelleyState kelley_max_min(const MatrixMap& map, std::span<const double> perturb,
                           int max_iters, double gap_tol, double early_exit_margin,
                           const Tol& tol, Rng& rng) {
    const Index d = map.dim();
    const int nvar = 2 + d; // t+, t-, u_1..u_d

    std::vector<LpRow> rows;
    for (Index j = 0; j < d; ++j) { // u_j <= 2
        LpRow r;
        r.a.assign(nvar, 0.0);
        r.a[2 + j] = 1.0;
        r.b = 2.0;
        rows.push_back(std::move(r));
    }
    std::vector<double> obj(nvar, 0.0);
    obj[0] = 1.0;
    obj[1] = -1.0;

    KelleyState st;

    auto add_objective_cut = [&](std::span<const double> x) {
        SymMat ax = map.evaluate(x);
        EigResult eig = sym_eig(ax, tol);
        double lam = eig.values.empty() ? 0.0 : eig.values.front();
        std::vector<double> c(d, 0.0);
        if (!eig.values.empty()) {
            std::vector<double> v = eig.vectors.col(0);
            for (Index j = 0; j < d; ++j) {
                double s = 0.0;
                for (Index a = 0; a < map.order(); ++a)
                    for (Index b = 0; b < map.order(); ++b) s += v[a] * map.basis(j)(a, b) * v[b];
                c[j] = s;
            }
        }
        for (Index j = 0; j < d; ++j) c[j] += perturb[j];
        // t <= c.x  ->  t+ - t- - c.u <= -c.1
        LpRow r;
        r.a.assign(nvar, 0.0);
        r.a[0] = 1.0;
        r.a[1] = -1.0;
        double csum = 0.0;
        for (Index j = 0; j < d; ++j) {
            r.a[2 + j] = -c[j];
            csum += c[j];
        }
        r.b = -csum;
        rows.push_back(std::move(r));
        ++st.cuts;

        double xn = norm2(x);
        if (xn > 1e-12) {
            double ptb = 0.0;
            for (Index j = 0; j < d; ++j) ptb += perturb[j] * x[j];
            double sphere_val = (lam + ptb) / xn; // 1-homogeneous
            if (sphere_val > st.best_sphere) {
                st.best_sphere = sphere_val;
                st.best_x = normalized(x);
            }
        }
        return lam;
    };

    auto add_ball_cut = [&](std::span<const double> g_unit) {
        LpRow r;
        r.a.assign(nvar, 0.0);
        double gsum = 0.0;
        for (Index j = 0; j < d; ++j) {
            r.a[2 + j] = g_unit[j];
            gsum += g_unit[j];
        }
        r.b = 1.0 + gsum;
        rows.push_back(std::move(r));
    };

    // Seed cuts at +-e_i and one random direction.
    std::vector<double> probe(d, 0.0);
    for (Index j = 0; j < std::min<Index>(d, 6); ++j) {
        probe.assign(d, 0.0);
        probe[j] = 1.0;
        add_objective_cut(probe);
        probe[j] = -1.0;
        add_objective_cut(probe);
    }
    add_objective_cut(rng.unit_vec(d));

    for (int iter = 0; iter < max_iters; ++iter) {
        LpResult master = lp_solve(rows, obj);
        if (master.status != LpStatus::Optimal)
            throw SolverFailureError("max_min_eig: master LP failed", st.upper - st.best_sphere);
        st.upper = master.objective;

        double gap = st.upper - std::max(0.0, st.best_sphere);
        if (gap <= gap_tol) {
            st.converged = true;
            break;
        }
        if (early_exit_margin > 0.0 && st.best_sphere > early_exit_margin && iter >= 4) break;

        std::vector<double> x(d);
        for (Index j = 0; j < d; ++j) x[j] = master.x[2 + j] - 1.0;
        double xn = norm2(x);
        if (xn > 1.0 + 1e-9) {
            std::vector<double> xu = normalized(x);
            add_ball_cut(xu);
            add_objective_cut(xu);
        } else if (xn < 1e-9) {
            add_objective_cut(rng.unit_vec(d));
        } else {
            add_objective_cut(x);
        }
    }
    if (!st.converged) {
        // final bound refresh
        LpResult master = lp_solve(rows, obj);
        if (master.status == LpStatus::Optimal) st.upper = master.objective;
        double gap = st.upper - std::max(0.0, st.best_sphere);
        if (gap <= gap_tol || (early_exit_margin > 0.0 && st.best_sphere > early_exit_margin))
            st.converged = true;
    }
    return st;
}

} // namespace

MaxMinEigResult max_min_eig(const MatrixMap& map, int max_iters, const Tol& tol, Rng& rng) {
    const double sigma = std::max(map.scale(), 1e-300);
    std::vector<SymMat> scaled;
    scaled.reserve(map.dim());
    for (const SymMat& a : map.basis()) scaled.push_back(a.scaled(1.0 / sigma));
    MatrixMap smap(std::move(scaled));

    std::vector<double> zero(map.dim(), 0.0);
    double gap_tol = tol.eps_psd; // scale-free: values of smap are lambda/sigma
    KelleyState st = kelley_max_min(smap, zero, max_iters, gap_tol, 0.0, tol, rng);

    MaxMinEigResult r;
    r.x_star = st.best_x.empty() ? std::vector<double>(map.dim(), 0.0) : st.best_x;
    if (st.best_x.empty() && map.dim() > 0) r.x_star[0] = 1.0;
    r.lambda_at_x_star = sigma * st.best_sphere;
    r.t_star = std::max(0.0, r.lambda_at_x_star);
    r.upper_bound = sigma * st.upper;
    r.cuts = st.cuts;
    r.converged = st.converged;
    if (!st.converged) {
        double gap = sigma * (st.upper - std::max(0.0, st.best_sphere));
        throw SolverFailureError("max_min_eig: iteration cap with gap above tolerance", gap);
    }
    return r;
}

std::pair<MatrixMap, CongruenceRecord> make_unital(const MatrixMap& map,
                                                   std::span<const double> p, const Tol& tol) {
    SymMat ap = map.evaluate(p);
    Mat L = cholesky_inverse(ap, tol); // throws if not PD
    MatrixMap unital = congruence(map, L, tol);
    return {unital, CongruenceRecord{L, false}};
}

ReducedPresentation facial_reduce(const MatrixMap& map, const Tol& tol, Rng& rng,
                                  const FacialReduceOptions& options) {
    const Index d0 = map.dim();
    MatrixMap cur = map;
    Mat domain = Mat::identity(d0);
    Mat codom = Mat::identity(map.order());
    Index kern_total = 0;
    bool borderline = false;
    int rounds = 0;

    std::optional<std::vector<double>> user_pt = options.interior_point;
    if (user_pt && static_cast<Index>(user_pt->size()) != d0)
        throw DimensionError("facial_reduce: interior point has wrong length");

    auto finish_regular = [&](std::span<const double> p) {
        auto [unital, rec] = make_unital(cur, p, tol);
        ReducedPresentation out;
        out.kind = ConeKind::Regular;
        out.reduced_map = std::move(unital);
        out.domain_basis = domain;
        out.interior_point.assign(p.begin(), p.end());
        out.codomain_transform = CongruenceRecord{rec.m * codom, false};
        out.common_kernel_dim = kern_total;
        out.borderline = borderline;
        out.rounds = rounds;
        return out;
    };

    for (int round = 0; round <= map.order() + 1; ++round, ++rounds) {
        if (cur.order() == 0) {
            ReducedPresentation out;
            out.kind = ConeKind::FullSubspace;
            out.reduced_map = cur;
            out.domain_basis = domain;
            out.codomain_transform = CongruenceRecord{codom, false};
            out.common_kernel_dim = kern_total;
            out.borderline = borderline;
            out.rounds = rounds;
            return out;
        }

        const double sigma = std::max(cur.scale(), 1e-300);
        const double margin = tol.eps_psd * std::max(1.0, sigma);
        const double feas_slack = std::max(1e-6 * std::max(1.0, sigma), 100.0 * margin);

        std::vector<std::vector<double>> feas_pts;
        double best_lambda = -std::numeric_limits<double>::infinity();
        std::vector<double> best_x;
        double upper = std::numeric_limits<double>::infinity();

        if (user_pt) {
            std::vector<double> p = normalized(*user_pt);
            double lam = min_eigenvalue(cur.evaluate(p), tol);
            if (lam < -feas_slack)
                throw Error("facial_reduce: provided interior point is not feasible");
            if (lam > margin) return finish_regular(p);
            feas_pts.push_back(p);
            best_lambda = lam;
            best_x = p;
            upper = lam; // trusted relative-interior point: no search
        } else {
            std::vector<SymMat> scaled;
            scaled.reserve(cur.dim());
            for (const SymMat& a : cur.basis()) scaled.push_back(a.scaled(1.0 / sigma));
            MatrixMap smap(std::move(scaled));
            std::vector<double> zero(cur.dim(), 0.0);

            KelleyState st;
            try {
                st = kelley_max_min(smap, zero, options.max_iters, tol.eps_psd,
                                    margin / sigma * 100.0, tol, rng);
            } catch (const SolverFailureError&) {
                borderline = true;
            }
            if (!st.converged) borderline = true;
            best_lambda = sigma * st.best_sphere;
            best_x = st.best_x;
            upper = sigma * st.upper;

            if (best_lambda > margin) {
                borderline = borderline || best_lambda <= 2.0 * margin;
                return finish_regular(best_x);
            }

            // Not strictly feasible: gather near-feasible directions from
            // perturbed restarts and average toward the relative interior.
            if (!best_x.empty() && best_lambda >= -feas_slack) feas_pts.push_back(best_x);
            const double delta = 1e-6;
            for (int j = 0; j < options.restarts; ++j) {
                std::vector<double> g = rng.unit_vec(cur.dim());
                for (double& v : g) v *= delta;
                KelleyState pst;
                try {
                    pst = kelley_max_min(smap, g, std::min(options.max_iters, 200),
                                         tol.eps_psd, 0.0, tol, rng);
                } catch (const SolverFailureError&) {
                    borderline = true;
                    continue;
                }
                if (pst.best_x.empty()) continue;
                double lam = min_eigenvalue(cur.evaluate(pst.best_x), tol);
                if (lam >= -feas_slack) {
                    feas_pts.push_back(pst.best_x);
                    if (lam > best_lambda) {
                        best_lambda = lam;
                        best_x = pst.best_x;
                    }
                }
            }
            if (best_lambda > margin) {
                borderline = true; // restart crossed the band; classify feasible cautiously
                return finish_regular(best_x);
            }
        }

        if (feas_pts.empty()) {
            // No near-feasible unit direction: the cone is the origin.
            ReducedPresentation out;
            out.kind = ConeKind::TrivialPoint;
            out.domain_basis = Mat(d0, 0);
            out.common_kernel_dim = kern_total;
            out.borderline = borderline || best_lambda > -1e-3 * std::max(1.0, sigma);
            out.rounds = rounds;
            return out;
        }

        std::vector<double> mean(cur.dim(), 0.0);
        for (const auto& p : feas_pts)
            for (Index j = 0; j < cur.dim(); ++j) mean[j] += p[j];
        if (norm2(mean) < 1e-6 * static_cast<double>(feas_pts.size()))
            mean = feas_pts.front(); // degenerate cancellation; fall back
        std::vector<double> pbar = normalized(mean);

        SymMat apbar = cur.evaluate(pbar);
        EigResult eig = sym_eig(apbar, tol);
        double lmin = eig.values.front();
        double scale_m = std::max(1.0, apbar.frob_norm());
        double thr = std::max({tol.eps_rank * scale_m, 8.0 * std::max(0.0, -lmin),
                               4.0 * feas_slack});

        Index kdim = 0;
        while (kdim < cur.order() && eig.values[kdim] <= thr) ++kdim;
        if (kdim == 0) {
            // Numerically positive definite but inside the tolerance band.
            borderline = true;
            return finish_regular(pbar);
        }
        Mat kern(cur.order(), kdim);
        for (Index j = 0; j < kdim; ++j)
            for (Index i = 0; i < cur.order(); ++i) kern(i, j) = eig.vectors(i, j);

        // Domain restriction {x : A(x) K = 0}.
        Mat G(cur.order() * kdim, cur.dim());
        for (Index j = 0; j < cur.dim(); ++j) {
            Mat ak = cur.basis(j).to_mat() * kern;
            Index r = 0;
            for (Index i = 0; i < cur.order(); ++i)
                for (Index k = 0; k < kdim; ++k) G(r++, j) = ak(i, k);
        }
        Subspace ldom = kernel_basis(G, tol);
        if (ldom.dim() == 0) {
            ReducedPresentation out;
            out.kind = ConeKind::TrivialPoint;
            out.domain_basis = Mat(d0, 0);
            out.common_kernel_dim = kern_total + kdim;
            out.borderline = borderline;
            out.rounds = rounds + 1;
            return out;
        }

        Subspace kern_sub(cur.order(), kern);
        Subspace wperp = complement(kern_sub, tol);
        cur = restrict_codomain(restrict_domain(cur, ldom.basis(), tol), wperp);
        domain = domain * ldom.basis();
        codom = wperp.basis().transposed() * codom;
        kern_total += kdim;
        if (user_pt) {
            // p lies in the restricted domain; express it there.
            std::vector<double> p = *user_pt;
            std::vector<double> pz(ldom.dim(), 0.0);
            for (Index j = 0; j < ldom.dim(); ++j) {
                double s = 0.0;
                for (Index i = 0; i < static_cast<Index>(p.size()); ++i)
                    s += ldom.basis()(i, j) * p[i];
                pz[j] = s;
            }
            user_pt = pz;
        }
    }
    throw NumericFailureError("facial_reduce: did not terminate within the round bound");
}

} // namespace specpoly
