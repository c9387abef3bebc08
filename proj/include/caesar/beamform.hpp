#pragma once

#include "caesar/linalg.hpp"
#include "caesar/synth.hpp"

namespace caesar {

/// Receive-beamformed observations. Z is K x N; z is its flattening with
/// [z]_{k+nK} = Z(k,n).
struct BeamformedData {
    int K = 1;
    int N = 0;
    CVec z;

    cd& Z(int k, int n) { return z[static_cast<size_t>(n) * K + k]; }
    const cd& Z(int k, int n) const { return z[static_cast<size_t>(n) * K + k]; }
};

enum class ZetaMode { Exact, Unit };

/// KN x MN range-Doppler sensing matrix. Row k+nK, column n_idx + m_idx*N.
struct SensingMatrix {
    CMat Phi;
    ZetaMode zeta_mode = ZetaMode::Exact;
    int M = 0, N = 0, K = 0;
};

/// Steers the receive beam to theta: Z(k,n) = w(theta,Omega_nk)^T ztilde_nk,
/// where ztilde is the sub-array slice (CAESAR/FAR) or cube slice (WMAR).
BeamformedData beamform(const EchoData& data, const FrequencyPlan& plan,
                        const RadarConfig& config);

SensingMatrix build_sensing_matrix(const FrequencyPlan& plan, const RadarConfig& config,
                                   ZetaMode zeta_mode = ZetaMode::Exact);

/// Rows of Phi and entries of z selected by the mask, ascending.
/// Throws ConfigError on an empty mask (degenerate problem).
struct RestrictedProblem {
    CVec z;
    CMat Phi;
    std::vector<int> rows; // original observation indices
};

RestrictedProblem restrict_problem(const BeamformedData& bf, const SensingMatrix& phi,
                                   const AvailabilityMask& mask);

} // namespace caesar
