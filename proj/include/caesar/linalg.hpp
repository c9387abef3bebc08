#pragma once

#include "caesar/kernels.hpp"
#include "caesar/types.hpp"

#include <vector>

namespace caesar {

/// Dense row-major complex matrix.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cd> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    cd& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const cd& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    const cd* row_ptr(int i) const { return a.data() + static_cast<size_t>(i) * cols; }
    cd* row_ptr(int i) { return a.data() + static_cast<size_t>(i) * cols; }
};

using CVec = std::vector<cd>;

CVec matvec(const CMat& A, const CVec& x);       // A x
CVec matvec_adj(const CMat& A, const CVec& x);   // A^H x
double norm2(const CVec& x);
double norm_inf(const CVec& x);

/// A^H A for tall-or-wide A; result is Hermitian cols x cols.
CMat gram(const CMat& A);
/// A A^H, Hermitian rows x rows.
CMat gram_rows(const CMat& A);

/// In-place Cholesky factorization G = L L^H of a Hermitian positive
/// definite matrix; lower triangle of G is replaced by L. Returns false if a
/// pivot is not strictly positive.
bool cholesky(CMat& G);
/// Solves L L^H x = b given the factor from cholesky().
CVec cholesky_solve(const CMat& L, const CVec& b);

/// Extreme eigenvalues of a Hermitian PSD matrix via (inverse) power
/// iteration. lambda_min uses the Cholesky factor; if factorization fails
/// the matrix is numerically singular and 0 is returned.
double lambda_max(const CMat& G, int iters = 60);
double lambda_min(const CMat& G, int iters = 60);

struct IllConditioned : std::runtime_error {
    IllConditioned(const std::string& what, double cond)
        : std::runtime_error(what), condition(cond) {}
    double condition;
};

struct LstsqResult {
    CVec x;
    double residual = 0.0;   // ||A x - b||_2
    double condition = 0.0;  // 2-norm condition estimate of the Gram matrix
};

/// Least squares via normal equations with a condition guard: throws
/// IllConditioned when cond(A^H A) exceeds cond_limit.
LstsqResult lstsq(const CMat& A, const CVec& b, double cond_limit = 1e8);

/// Largest eigenvalue of A^H A (squared spectral norm of A), used as the
/// gradient Lipschitz constant by FISTA.
double spectral_norm_sq(const CMat& A, int iters = 80);

} // namespace caesar
