#pragma once

#include "caesar/linalg.hpp"
#include "caesar/synth.hpp"

namespace caesar {

/// Reconstructed per-scatterer echo with the same shape as the original
/// data.
struct IsolatedEcho {
    int s = 0; // flat range-Doppler cell index n + m*N
    EchoData echo;
};

struct AngleEstimate {
    int s = 0;
    double theta_hat = 0.0;
    cd beta_refined{0.0, 0.0}; // closed-form LS quotient at theta_hat
};

/// Splits the data into per-scatterer echoes by least-squares projection of
/// each receiver row onto the temporal signatures of the recovered cells.
/// Requires |support| < N; throws IsolationFailure when the signature Gram
/// matrix is ill-conditioned (condition number above cond_limit).
std::vector<IsolatedEcho> isolate_echoes(const EchoData& Y, const std::vector<int>& support,
                                         const FrequencyPlan& plan, const RadarConfig& config,
                                         double cond_limit = 1e8);

/// Scans the beam sector with a matched filter against the steering echo of
/// the scatterer's grid cell. grid_step <= 0 selects the default pi/(200 L).
AngleEstimate matched_filter_angle(const IsolatedEcho& isolated, const FrequencyPlan& plan,
                                   const RadarConfig& config, double grid_step = 0.0);

struct RefineResult {
    std::vector<int> support;
    CVec beta;       // refined intensities, aligned with support
    double residual; // ||vec(Y) - C beta||_2
};

/// Re-estimates all intensities jointly from the raw data given the angle
/// estimates. Throws RefinementFailure when the steering columns are
/// rank-deficient.
RefineResult refine_intensities(const EchoData& Y, const std::vector<AngleEstimate>& estimates,
                                const FrequencyPlan& plan, const RadarConfig& config,
                                double cond_limit = 1e8);

/// RMSE of the angle estimates over the correctly recovered cells.
/// Throws UndefinedMetric when no estimate matches a scene cell.
double angle_rmse(const std::vector<AngleEstimate>& estimates, const Scene& scene, int N);

} // namespace caesar
