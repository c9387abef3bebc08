#pragma once

#include "caesar/rng.hpp"
#include "caesar/types.hpp"

namespace caesar {

/// Draws the per-pulse carrier subsets (uniform over all C(M,K) subsets,
/// i.i.d. across pulses) and, for CAESAR, a uniformly random balanced
/// partition of the elements into the K frequency slots of each pulse.
/// Deterministic given the RNG state.
FrequencyPlan sample_frequency_plan(const RadarConfig& config, Rng& rng);

/// Samples S distinct range-Doppler grid cells without replacement, angles
/// uniform in the beam sector, unit generalized intensities.
/// Throws ConfigError when S > M*N.
Scene sample_scene(const RadarConfig& config, int S, Rng& rng);

} // namespace caesar
