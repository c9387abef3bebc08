#include "caesar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace caesar {

CVec matvec(const CMat& A, const CVec& x) {
    CVec y(A.rows);
    kernels::matvec(A.a.data(), x.data(), y.data(), A.rows, A.cols);
    return y;
}

CVec matvec_adj(const CMat& A, const CVec& x) {
    CVec y(A.cols);
    kernels::matvec_adj(A.a.data(), x.data(), y.data(), A.rows, A.cols);
    return y;
}

double norm2(const CVec& x) { return std::sqrt(kernels::norm2sq(x.data(), x.size())); }

double norm_inf(const CVec& x) {
    double m = 0.0;
    for (const cd& v : x) m = std::max(m, std::abs(v));
    return m;
}

CMat gram(const CMat& A) {
    CMat G(A.cols, A.cols);
    // column views are strided; go row by row instead: G += a_r^H a_r
    for (int r = 0; r < A.rows; ++r) {
        const cd* row = A.row_ptr(r);
        for (int i = 0; i < A.cols; ++i) {
            const cd ci = std::conj(row[i]);
            cd* gi = G.row_ptr(i);
            for (int j = i; j < A.cols; ++j) gi[j] += ci * row[j];
        }
    }
    for (int i = 0; i < A.cols; ++i)
        for (int j = 0; j < i; ++j) G(i, j) = std::conj(G(j, i));
    return G;
}

CMat gram_rows(const CMat& A) {
    CMat G(A.rows, A.rows);
    // [A A^H]_(i,j) = sum_k A(i,k) conj(A(j,k))
    for (int i = 0; i < A.rows; ++i)
        for (int j = i; j < A.rows; ++j)
            G(i, j) = kernels::dotc(A.row_ptr(j), A.row_ptr(i), A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < i; ++j) G(i, j) = std::conj(G(j, i));
    return G;
}

bool cholesky(CMat& G) {
    const int n = G.rows;
    for (int j = 0; j < n; ++j) {
        double diag = G(j, j).real();
        for (int k = 0; k < j; ++k) diag -= std::norm(G(j, k));
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        G(j, j) = cd{ljj, 0.0};
        for (int i = j + 1; i < n; ++i) {
            cd s = G(i, j);
            for (int k = 0; k < j; ++k) s -= G(i, k) * std::conj(G(j, k));
            G(i, j) = s / ljj;
        }
    }
    return true;
}

CVec cholesky_solve(const CMat& L, const CVec& b) {
    const int n = L.rows;
    CVec y(b);
    for (int i = 0; i < n; ++i) {
        cd s = y[i];
        for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i).real();
    }
    for (int i = n - 1; i >= 0; --i) {
        cd s = y[i];
        for (int k = i + 1; k < n; ++k) s -= std::conj(L(k, i)) * y[k];
        y[i] = s / L(i, i).real();
    }
    return y;
}

namespace {

CVec unit_seed(int n) {
    CVec v(n);
    // fixed deterministic pseudo-random direction, no RNG dependency
    uint64_t s = 0x243f6a8885a308d3ULL;
    for (int i = 0; i < n; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        const double re = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        const double im = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
        v[i] = cd{re, im};
    }
    const double nrm = norm2(v);
    for (cd& x : v) x /= nrm;
    return v;
}

} // namespace

double lambda_max(const CMat& G, int iters) {
    if (G.rows == 0) return 0.0;
    CVec v = unit_seed(G.rows);
    double lam = 0.0;
    for (int it = 0; it < iters; ++it) {
        CVec w = matvec(G, v);
        const double nrm = norm2(w);
        if (nrm == 0.0) return 0.0;
        lam = nrm;
        for (size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nrm;
    }
    return lam;
}

double lambda_min(const CMat& G, int iters) {
    if (G.rows == 0) return 0.0;
    CMat L(G);
    if (!cholesky(L)) return 0.0;
    CVec v = unit_seed(G.rows);
    double lam_inv = 0.0;
    for (int it = 0; it < iters; ++it) {
        CVec w = cholesky_solve(L, v);
        const double nrm = norm2(w);
        if (nrm == 0.0) return 0.0;
        lam_inv = nrm;
        for (size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nrm;
    }
    return lam_inv > 0.0 ? 1.0 / lam_inv : 0.0;
}

LstsqResult lstsq(const CMat& A, const CVec& b, double cond_limit) {
    LstsqResult res;
    CMat G = gram(A);
    const double lmax = lambda_max(G);
    const double lmin = lambda_min(G);
    res.condition = (lmin > 0.0) ? lmax / lmin : std::numeric_limits<double>::infinity();
    if (!(res.condition <= cond_limit)) {
        throw IllConditioned("normal equations ill-conditioned: cond = " +
                                 std::to_string(res.condition),
                             res.condition);
    }
    CMat L(G);
    cholesky(L); // succeeded inside lambda_min already
    res.x = cholesky_solve(L, matvec_adj(A, b));
    CVec r = matvec(A, res.x);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    res.residual = norm2(r);
    return res;
}

double spectral_norm_sq(const CMat& A, int iters) {
    if (A.rows == 0 || A.cols == 0) return 0.0;
    CVec v = unit_seed(A.cols);
    double lam = 0.0;
    for (int it = 0; it < iters; ++it) {
        CVec w = matvec(A, v);
        CVec g = matvec_adj(A, w);
        const double nrm = norm2(g);
        if (nrm == 0.0) return 0.0;
        lam = nrm;
        for (size_t i = 0; i < g.size(); ++i) v[i] = g[i] / nrm;
    }
    return lam;
}

} // namespace caesar
