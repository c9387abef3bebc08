#pragma once

#include "caesar/model.hpp"

#include <iosfwd>

namespace caesar {

/// Received data for one CPI: L x N matrix (FAR/CAESAR) or L x N x K cube
/// (WMAR), flattened row-major as ((l*N)+n)*K + k with K=1 for the matrix
/// case.
struct EchoData {
    Mode mode = Mode::CAESAR;
    int L = 0;
    int N = 0;
    int K = 1; // sample dimension: 1 for FAR/CAESAR, K for WMAR
    std::vector<cd> samples;
    double kappa2 = 0.0;

    cd& at(int l, int n, int k = 0) { return samples[(static_cast<size_t>(l) * N + n) * K + k]; }
    const cd& at(int l, int n, int k = 0) const {
        return samples[(static_cast<size_t>(l) * N + n) * K + k];
    }
    size_t size() const { return samples.size(); }
};

/// Which beamformed observations survived jamming.
struct AvailabilityMask {
    enum class Pattern { Full, Pulse, Observation };
    Pattern pattern = Pattern::Full;
    std::vector<int> pulses;       // Lambda, ascending (pulse-selective and full only)
    std::vector<int> observations; // Lambda_*, flat indices k + n*K, ascending

    bool empty() const { return observations.empty(); }
};

/// Mask with every observation retained.
AvailabilityMask full_mask(int N, int K);

/// Draws the jamming survival mask. Pulse-selective keeps each pulse (all K
/// of its observations) with probability u; observation-selective keeps each
/// of the K*N observations independently with probability u. The echo data
/// itself is never modified; restriction happens at recovery time.
AvailabilityMask apply_jamming(const RadarConfig& config, double u,
                               AvailabilityMask::Pattern pattern, Rng& rng);

/// Sub-array (CAESAR) or full-array (WMAR/FAR) transmit gain toward
/// direction-sine offset delta.
cd transmit_gain(const FrequencyPlan& plan, const RadarConfig& config, int n, int k, double delta);

/// Noiseless single-target echo with unit intensity: the steering data
/// matrix/cube evaluated at grid cell (m_idx, n_idx) and angle.
EchoData target_signature(const RadarConfig& config, const FrequencyPlan& plan,
                          int m_idx, int n_idx, double angle);

/// Full received-data synthesis from the closed-form entry model plus
/// i.i.d. circular complex Gaussian noise of variance kappa2 per sample.
EchoData synthesize(const Scene& scene, const FrequencyPlan& plan, const RadarConfig& config,
                    Rng& rng);

/// Debug dump: header line "mode,L,N,K", then one line per element with
/// re,im pairs in row-major sample order.
void dump_echo_csv(const EchoData& echo, std::ostream& os);

} // namespace caesar
