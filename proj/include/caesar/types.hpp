#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace caesar {

using cd = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Transmission scheme. FAR is the K=1 special case of both multi-carrier
/// schemes; WMAR sends all K tones from every element; CAESAR splits the
/// array into per-tone sub-arrays.
enum class Mode { FAR, WMAR, CAESAR };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SolverFailure : std::runtime_error {
    SolverFailure(const std::string& what, double final_residual)
        : std::runtime_error(what), residual(final_residual) {}
    double residual;
};

struct IsolationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RefinementFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UndefinedMetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar radar parameters shared by all schemes.
struct RadarConfig {
    double fc = 9e9;        // carrier start frequency [Hz]
    double delta_f = 1e6;   // carrier step [Hz]
    int M = 8;              // available carriers
    int N = 32;             // pulses per CPI
    int K = 2;              // carriers per pulse
    int L = 10;             // array elements
    double d = 0.0;         // element spacing [m]; 0 selects c/(2 fc)
    double theta = 0.0;     // beam direction [rad]
    Mode mode = Mode::CAESAR;
    double kappa2 = 0.0;    // per-sample noise variance
    uint64_t seed = 0;

    /// Carrier frequency for code index c: fc + c*delta_f.
    double carrier(int code) const { return fc + static_cast<double>(code) * delta_f; }
    /// Relative frequency factor zeta = Omega/fc.
    double zeta(int code) const { return carrier(code) / fc; }
    /// Element spacing with the half-wavelength default applied.
    double spacing() const { return d > 0.0 ? d : kSpeedOfLight / (2.0 * fc); }
    /// Half-width of the beam sector Theta = theta +- pi/(2L).
    double beam_halfwidth() const { return kPi / (2.0 * static_cast<double>(L)); }

    /// Throws ConfigError if any invariant is violated.
    void validate() const;
};

/// Per-CPI carrier selections and (for CAESAR) the element-to-slot map.
struct FrequencyPlan {
    // codes[n][k] in {0..M-1}; the K codes of a pulse are distinct and
    // stored ascending.
    std::vector<std::vector<int>> codes;
    // alloc[n][l] in {0..K-1}: frequency slot served by element l in pulse n.
    // All-zeros for FAR; unused (but kept all-zeros) for WMAR.
    std::vector<std::vector<int>> alloc;

    int pulses() const { return static_cast<int>(codes.size()); }
    int slots() const { return codes.empty() ? 0 : static_cast<int>(codes[0].size()); }
};

/// One on-grid scattering point.
struct Target {
    cd beta{1.0, 0.0};  // generalized intensity
    int m_idx = 0;      // range grid index, r~ = 2*pi*m/M
    int n_idx = 0;      // Doppler grid index, v~ = 2*pi*n/N
    double angle = 0.0; // direction angle [rad], inside the beam sector
};

struct Scene {
    std::vector<Target> targets;

    int size() const { return static_cast<int>(targets.size()); }
    /// Flat range-Doppler cell index s = n + m*N.
    static int cell_index(int m_idx, int n_idx, int N) { return n_idx + m_idx * N; }
};

inline double normalized_range(int m_idx, int M) { return kTwoPi * m_idx / M; }
inline double normalized_doppler(int n_idx, int N) { return kTwoPi * n_idx / N; }

} // namespace caesar
