#include "caesar/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace caesar {

CVec basis_pursuit(const CVec& z, const CMat& Phi, const SolverOptions& opts) {
    if (Phi.rows < 1) throw ConfigError("basis_pursuit: sensing matrix has no rows");
    if (static_cast<int>(z.size()) != Phi.rows)
        throw ConfigError("basis_pursuit: dimension mismatch");
    const int n = Phi.cols;

    const double znorm = norm2(z);
    if (znorm == 0.0) return CVec(n, cd{0.0, 0.0});

    // Work on z scaled to unit norm; the BP solution scales linearly.
    CVec zs(z);
    for (cd& v : zs) v /= znorm;

    CMat L = gram_rows(Phi);
    if (!cholesky(L)) throw SolverFailure("basis_pursuit: Phi Phi^H not positive definite", 1.0);

    // Projection onto {b : Phi b = zs}: v + Phi^H (Phi Phi^H)^{-1} (zs - Phi v)
    auto project = [&](const CVec& v) {
        CVec r = matvec(Phi, v);
        for (size_t i = 0; i < r.size(); ++i) r[i] = zs[i] - r[i];
        CVec corr = matvec_adj(Phi, cholesky_solve(L, r));
        CVec out(v);
        for (int j = 0; j < n; ++j) out[j] += corr[j];
        return out;
    };

    CVec w(n, cd{0.0, 0.0}), u(n, cd{0.0, 0.0}), w_prev(n), beta(n), tmp(n);
    double rho = 1.0;

    double prim = 0.0, dual = 0.0;
    for (int it = 0; it < opts.bp_max_iters; ++it) {
        for (int j = 0; j < n; ++j) tmp[j] = w[j] - u[j];
        beta = project(tmp);
        w_prev.swap(w);
        for (int j = 0; j < n; ++j) tmp[j] = beta[j] + u[j];
        w.resize(n);
        kernels::soft_threshold(tmp.data(), w.data(), 1.0 / rho, n);
        double prim_sq = 0.0, dual_sq = 0.0;
        for (int j = 0; j < n; ++j) {
            const cd pr = beta[j] - w[j];
            const cd du = w[j] - w_prev[j];
            u[j] += pr;
            prim_sq += std::norm(pr);
            dual_sq += std::norm(du);
        }
        prim = std::sqrt(prim_sq);
        dual = rho * std::sqrt(dual_sq);

        const double scale =
            std::max({norm2(beta), norm2(w), 1e-30});
        if (prim <= opts.bp_tol * scale && dual <= opts.bp_tol * scale) {
            CVec out = project(w);
            for (cd& v : out) v *= znorm;
            return out;
        }
        // residual balancing keeps the penalty in a useful range
        if (prim > 10.0 * dual) {
            rho *= 2.0;
            for (cd& v : u) v *= 0.5;
        } else if (dual > 10.0 * prim) {
            rho *= 0.5;
            for (cd& v : u) v *= 2.0;
        }
    }
    throw SolverFailure("basis_pursuit: no convergence within iteration budget",
                        prim / std::max(norm2(w), 1e-30));
}

CVec lasso(const CVec& z, const CMat& Phi, double lambda, const SolverOptions& opts) {
    if (lambda <= 0.0) throw ConfigError("lasso: lambda must be positive");
    if (Phi.rows < 1 || static_cast<int>(z.size()) != Phi.rows)
        throw ConfigError("lasso: dimension mismatch");
    const int n = Phi.cols;

    const double lip = spectral_norm_sq(Phi) * 1.01;
    if (lip == 0.0) return CVec(n, cd{0.0, 0.0});
    const double step = 1.0 / lip;

    CVec beta(n, cd{0.0, 0.0}), beta_prev(n, cd{0.0, 0.0}), y(n, cd{0.0, 0.0}), grad(n), tmp(n);
    double t = 1.0;
    double kkt = 0.0;

    auto kkt_violation = [&](const CVec& b) {
        CVec r = matvec(Phi, b);
        for (size_t i = 0; i < r.size(); ++i) r[i] -= z[i];
        CVec g = matvec_adj(Phi, r);
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            const double mag = std::abs(b[j]);
            if (mag > 0.0)
                worst = std::max(worst, std::abs(g[j] + lambda * b[j] / mag));
            else
                worst = std::max(worst, std::max(0.0, std::abs(g[j]) - lambda));
        }
        return worst;
    };

    for (int it = 0; it < opts.lasso_max_iters; ++it) {
        CVec r = matvec(Phi, y);
        for (size_t i = 0; i < r.size(); ++i) r[i] -= z[i];
        grad = matvec_adj(Phi, r);
        beta_prev.swap(beta);
        for (int j = 0; j < n; ++j) tmp[j] = y[j] - step * grad[j];
        beta.resize(n);
        kernels::soft_threshold(tmp.data(), beta.data(), lambda * step, n);

        // adaptive restart on loss of momentum alignment
        double align = 0.0;
        for (int j = 0; j < n; ++j)
            align += std::real(std::conj(y[j] - beta[j]) * (beta[j] - beta_prev[j]));
        if (align > 0.0) t = 1.0;

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double mom = (t - 1.0) / t_next;
        for (int j = 0; j < n; ++j) y[j] = beta[j] + mom * (beta[j] - beta_prev[j]);
        t = t_next;

        if (it % 10 == 9 || it == opts.lasso_max_iters - 1) {
            kkt = kkt_violation(beta);
            if (kkt <= opts.lasso_tol * lambda) return beta;
        }
    }
    throw SolverFailure("lasso: no convergence within iteration budget", kkt / lambda);
}

std::vector<int> extract_support(const CVec& beta_hat, int S_assumed) {
    if (S_assumed < 1) throw ConfigError("extract_support: S_assumed must be >= 1");
    const int n = static_cast<int>(beta_hat.size());
    const int S = std::min(S_assumed, n);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + S, idx.end(), [&](int a, int b) {
        const double ma = std::abs(beta_hat[a]);
        const double mb = std::abs(beta_hat[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    });
    std::vector<int> support(idx.begin(), idx.begin() + S);
    std::sort(support.begin(), support.end());
    return support;
}

std::vector<int> extract_support_threshold(const CVec& beta_hat, double tau) {
    double peak = 0.0;
    for (const cd& v : beta_hat) peak = std::max(peak, std::abs(v));
    std::vector<int> support;
    if (peak == 0.0) return support;
    for (int j = 0; j < static_cast<int>(beta_hat.size()); ++j)
        if (std::abs(beta_hat[j]) > tau * peak) support.push_back(j);
    return support;
}

double hit_rate(const std::vector<int>& support, const Scene& scene, int N) {
    if (scene.targets.empty()) throw UndefinedMetric("hit_rate: empty scene");
    std::set<int> sup(support.begin(), support.end());
    int hits = 0;
    for (const Target& t : scene.targets)
        if (sup.count(Scene::cell_index(t.m_idx, t.n_idx, N))) ++hits;
    return static_cast<double>(hits) / static_cast<double>(scene.targets.size());
}

} // namespace caesar
