#pragma once

#include "caesar/beamform.hpp"

#include <set>

namespace caesar {

struct SolverOptions {
    int bp_max_iters = 6000;
    double bp_tol = 1e-9;       // ADMM primal/dual relative tolerance
    double bp_residual_tol = 1e-6; // equality residual contract, relative to ||z||
    int lasso_max_iters = 20000;
    double lasso_tol = 1e-6;    // KKT violation relative to lambda
    double lambda_scale = 0.1;  // default lambda = scale * ||Phi^H z||_inf
};

/// Basis pursuit (min ||b||_1 s.t. Phi b = z) via ADMM with projection onto
/// the equality constraint; the returned vector is feasible, so the equality
/// residual is at machine-precision level. Throws SolverFailure (carrying
/// the final consensus residual) when the primal/dual tolerances are not met
/// within the iteration budget.
CVec basis_pursuit(const CVec& z, const CMat& Phi, const SolverOptions& opts = {});

/// Lasso (min 1/2 ||Phi b - z||^2 + lambda ||b||_1) via FISTA with adaptive
/// restart; converged when the subgradient optimality violation is below
/// lasso_tol * lambda.
CVec lasso(const CVec& z, const CMat& Phi, double lambda, const SolverOptions& opts = {});

/// Indices of the S largest |beta| entries, ties broken by lower index.
std::vector<int> extract_support(const CVec& beta_hat, int S_assumed);

/// Indices with |beta| > tau * max|beta| (unknown-sparsity mode).
std::vector<int> extract_support_threshold(const CVec& beta_hat, double tau = 0.3);

/// Fraction of the scene's range-Doppler cells present in the support.
double hit_rate(const std::vector<int>& support, const Scene& scene, int N);

} // namespace caesar
