#include "caesar/synth.hpp"

#include <cmath>
#include <ostream>

namespace caesar {

AvailabilityMask full_mask(int N, int K) {
    AvailabilityMask mask;
    mask.pattern = AvailabilityMask::Pattern::Full;
    mask.pulses.resize(N);
    mask.observations.resize(static_cast<size_t>(N) * K);
    for (int n = 0; n < N; ++n) mask.pulses[n] = n;
    for (int i = 0; i < N * K; ++i) mask.observations[i] = i;
    return mask;
}

AvailabilityMask apply_jamming(const RadarConfig& config, double u,
                               AvailabilityMask::Pattern pattern, Rng& rng) {
    if (!(u > 0.0 && u <= 1.0)) throw ConfigError("survival probability u must be in (0,1]");
    const int N = config.N, K = config.K;
    AvailabilityMask mask;
    mask.pattern = pattern;
    switch (pattern) {
        case AvailabilityMask::Pattern::Full:
            return full_mask(N, K);
        case AvailabilityMask::Pattern::Pulse:
            for (int n = 0; n < N; ++n) {
                if (rng.uniform01() < u) {
                    mask.pulses.push_back(n);
                    for (int k = 0; k < K; ++k) mask.observations.push_back(n * K + k);
                }
            }
            break;
        case AvailabilityMask::Pattern::Observation:
            for (int o = 0; o < N * K; ++o)
                if (rng.uniform01() < u) mask.observations.push_back(o);
            break;
    }
    return mask;
}

namespace {

inline cd phase(double arg) { return cd{std::cos(arg), std::sin(arg)}; }

// Powers base^l for l = 0..L-1.
void phasor_powers(cd base, int L, std::vector<cd>& out) {
    out.resize(L);
    cd p{1.0, 0.0};
    for (int l = 0; l < L; ++l) {
        out[l] = p;
        p *= base;
    }
}

} // namespace

cd transmit_gain(const FrequencyPlan& plan, const RadarConfig& config, int n, int k,
                 double delta) {
    if (n < 0 || n >= plan.pulses() || k < 0 || k >= plan.slots())
        throw ConfigError("transmit_gain: pulse or slot index out of range");
    const double omega = config.carrier(plan.codes[n][k]);
    const cd base = phase(-kTwoPi * omega * config.spacing() * delta / kSpeedOfLight);
    cd gain{0.0, 0.0};
    cd p{1.0, 0.0};
    if (config.mode == Mode::CAESAR) {
        for (int l = 0; l < config.L; ++l) {
            if (plan.alloc[n][l] == k) gain += p;
            p *= base;
        }
    } else {
        for (int l = 0; l < config.L; ++l) {
            gain += p;
            p *= base;
        }
    }
    return gain;
}

namespace {

// Accumulates one scaled target echo into dst. Shared by synthesize and the
// steering-matrix construction so the two stay consistent by construction.
void accumulate_target(EchoData& dst, const RadarConfig& config, const FrequencyPlan& plan,
                       cd beta, int m_idx, int n_idx, double angle) {
    const int L = config.L, N = config.N, K = config.K;
    const double r_norm = normalized_range(m_idx, config.M);
    const double v_norm = normalized_doppler(n_idx, N);
    const double delta = std::sin(angle) - std::sin(config.theta);
    const double spacing = config.spacing();
    const double sin_angle = std::sin(angle);
    const double wmar_scale = 1.0 / std::sqrt(static_cast<double>(K));

    std::vector<cd> spatial;
    for (int n = 0; n < N; ++n) {
        for (int k = 0; k < K; ++k) {
            const int code = plan.codes[n][k];
            const double omega = config.carrier(code);
            const double zeta = config.zeta(code);
            const cd temporal = phase(r_norm * code + v_norm * n * zeta);
            const cd rho = transmit_gain(plan, config, n, k, delta);
            phasor_powers(phase(-kTwoPi * omega * spacing * sin_angle / kSpeedOfLight), L,
                          spatial);
            if (dst.mode == Mode::WMAR) {
                const cd coef = beta * wmar_scale * temporal * rho;
                for (int l = 0; l < L; ++l) dst.at(l, n, k) += coef * spatial[l];
            } else {
                const cd coef = beta * temporal * rho;
                for (int l = 0; l < L; ++l)
                    if (plan.alloc[n][l] == k) dst.at(l, n) += coef * spatial[l];
            }
        }
    }
}

} // namespace

EchoData target_signature(const RadarConfig& config, const FrequencyPlan& plan, int m_idx,
                          int n_idx, double angle) {
    EchoData echo;
    echo.mode = config.mode;
    echo.L = config.L;
    echo.N = config.N;
    echo.K = (config.mode == Mode::WMAR) ? config.K : 1;
    echo.kappa2 = 0.0;
    echo.samples.assign(static_cast<size_t>(echo.L) * echo.N * echo.K, cd{0.0, 0.0});
    accumulate_target(echo, config, plan, cd{1.0, 0.0}, m_idx, n_idx, angle);
    return echo;
}

EchoData synthesize(const Scene& scene, const FrequencyPlan& plan, const RadarConfig& config,
                    Rng& rng) {
    if (plan.pulses() != config.N || plan.slots() != config.K)
        throw ConfigError("synthesize: plan does not match config");
    for (const Target& t : scene.targets) {
        if (t.m_idx < 0 || t.m_idx >= config.M || t.n_idx < 0 || t.n_idx >= config.N)
            throw ConfigError("synthesize: target off the range-Doppler grid");
    }

    EchoData echo;
    echo.mode = config.mode;
    echo.L = config.L;
    echo.N = config.N;
    echo.K = (config.mode == Mode::WMAR) ? config.K : 1;
    echo.kappa2 = config.kappa2;
    echo.samples.assign(static_cast<size_t>(echo.L) * echo.N * echo.K, cd{0.0, 0.0});

    for (const Target& t : scene.targets)
        accumulate_target(echo, config, plan, t.beta, t.m_idx, t.n_idx, t.angle);

    if (config.kappa2 > 0.0) {
        const double sigma = std::sqrt(config.kappa2 / 2.0);
        for (cd& s : echo.samples) s += cd{sigma * rng.normal(), sigma * rng.normal()};
    }
    return echo;
}

void dump_echo_csv(const EchoData& echo, std::ostream& os) {
    os << to_string(echo.mode) << "," << echo.L << "," << echo.N << "," << echo.K << "\n";
    for (int l = 0; l < echo.L; ++l) {
        for (int n = 0; n < echo.N; ++n) {
            for (int k = 0; k < echo.K; ++k) {
                if (n != 0 || k != 0) os << ",";
                const cd& v = echo.at(l, n, k);
                os << v.real() << "," << v.imag();
            }
        }
        os << "\n";
    }
}

} // namespace caesar
