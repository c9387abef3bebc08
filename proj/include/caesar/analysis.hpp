#pragma once

#include "caesar/beamform.hpp"
#include "caesar/model.hpp"

namespace caesar {

struct CoherenceReport {
    double mu = 0.0;
    int delta_m = 0;     // offset achieving the maximum
    int delta_n = 0;
    int lambda_size = -1; // |Lambda| when pulse-structured, -1 otherwise
};

/// Exhaustive normalized column-pair correlation maximum. M and N recover
/// the grid offset of the maximizing pair. Throws on zero columns.
CoherenceReport coherence_direct(const CMat& Phi, int M, int N);

/// Difference-set evaluation of the coherence for a realized plan under a
/// pulse-selective (or full) mask: mu = max_{offsets} |chi| / |Lambda|.
/// Valid for the unit-zeta sensing matrix only.
CoherenceReport coherence_fast(const FrequencyPlan& plan, const AvailabilityMask& mask,
                               const RadarConfig& config);

/// chi(dm, dn) for a realized (codes, Lambda) draw; offsets are grid indices
/// with (dm, dn) != (0, 0).
cd chi_value(const std::vector<std::vector<int>>& codes, const std::vector<int>& pulses, int M,
             int N, int K, int dm, int dn);

struct ChiMoments {
    std::vector<cd> means; // E[chi_n], n = 0..N-1
    double variance_sum = 0.0;
};

/// Closed-form per-pulse moments of chi_n for a fixed offset.
ChiMoments chi_moments_closed_form(int M, int N, int K, double u, int dm, int dn);

struct ChiEmpirical {
    std::vector<cd> means;
    double variance_sum = 0.0;
    double max_center_dev = 0.0; // max_n,t |chi_n - E[chi_n]| observed
};

/// Monte Carlo estimate of the chi_n moments over independent (codes, mask)
/// draws.
ChiEmpirical chi_empirical_moments(int M, int N, int K, double u, int dm, int dn, int trials,
                                   Rng& rng);

/// Recoverable-sparsity bound: the largest S (real-valued) for which the
/// coherence condition mu <= 1/(2S-1) holds with probability >= 1-delta.
/// Callers floor the result; values <= 0 mean the bound is vacuous. Throws
/// UndefinedMetric when V = 0 (u = 1 and K = M).
double sparsity_bound(int M, int N, int K, double u, double delta);

struct TailBounds {
    double chi_tail = 1.0;    // P(|chi| >= sqrt(V) + eps) bound
    double lambda_tail = 1.0; // P(|Lambda| <= uN - t) bound
};

/// Analytic tail bounds, valid for 0 <= eps <= V and t > 0.
TailBounds tail_bounds(double V, int N, double u, double eps, double t);

/// V = max{u(1-u)N, (M-K)/((M-1)K) uN}, the variance proxy in the bounds.
double variance_proxy(int M, int N, int K, double u);

struct MuSampleStats {
    int trials = 0;
    int empty_masks = 0;
    double mean = 0.0;
    double max = 0.0;
    double p_le_threshold = 0.0;
    double threshold = 0.0;
};

/// Draws (plan, pulse-mask) realizations and tallies coherence statistics;
/// draws with an empty mask count against the threshold probability.
MuSampleStats mu_monte_carlo(const RadarConfig& config, double u, int trials, double threshold,
                             uint64_t seed);

} // namespace caesar
