#include "caesar/beamform.hpp"

#include <cmath>

namespace caesar {

namespace {
inline cd phase(double arg) { return cd{std::cos(arg), std::sin(arg)}; }
} // namespace

BeamformedData beamform(const EchoData& data, const FrequencyPlan& plan,
                        const RadarConfig& config) {
    const bool wmar = config.mode == Mode::WMAR;
    if (data.mode != config.mode || data.L != config.L || data.N != config.N ||
        data.K != (wmar ? config.K : 1))
        throw ConfigError("beamform: echo data does not match config");

    const int L = config.L, N = config.N, K = config.K;
    const double spacing = config.spacing();
    const double sin_theta = std::sin(config.theta);

    BeamformedData bf;
    bf.K = K;
    bf.N = N;
    bf.z.assign(static_cast<size_t>(K) * N, cd{0.0, 0.0});

    for (int n = 0; n < N; ++n) {
        for (int k = 0; k < K; ++k) {
            const double omega = config.carrier(plan.codes[n][k]);
            const cd w_base = phase(kTwoPi * omega * spacing * sin_theta / kSpeedOfLight);
            cd w{1.0, 0.0};
            cd acc{0.0, 0.0};
            if (wmar) {
                for (int l = 0; l < L; ++l) {
                    acc += w * data.at(l, n, k);
                    w *= w_base;
                }
            } else {
                for (int l = 0; l < L; ++l) {
                    if (plan.alloc[n][l] == k) acc += w * data.at(l, n);
                    w *= w_base;
                }
            }
            bf.Z(k, n) = acc;
        }
    }
    return bf;
}

SensingMatrix build_sensing_matrix(const FrequencyPlan& plan, const RadarConfig& config,
                                   ZetaMode zeta_mode) {
    const int M = config.M, N = config.N, K = config.K;
    SensingMatrix sm;
    sm.zeta_mode = zeta_mode;
    sm.M = M;
    sm.N = N;
    sm.K = K;
    sm.Phi = CMat(K * N, M * N);

    for (int n = 0; n < N; ++n) {
        for (int k = 0; k < K; ++k) {
            const int code = plan.codes[n][k];
            const double zeta = (zeta_mode == ZetaMode::Exact) ? config.zeta(code) : 1.0;
            cd* row = sm.Phi.row_ptr(n * K + k);
            for (int m = 0; m < M; ++m) {
                const double range_part = kTwoPi * m * code / M;
                for (int l = 0; l < N; ++l)
                    row[l + m * N] = phase(range_part + kTwoPi * l * n * zeta / N);
            }
        }
    }
    return sm;
}

RestrictedProblem restrict_problem(const BeamformedData& bf, const SensingMatrix& phi,
                                   const AvailabilityMask& mask) {
    if (mask.empty()) throw ConfigError("restrict: empty availability mask (degenerate problem)");
    const int total = phi.Phi.rows;
    RestrictedProblem rp;
    rp.rows = mask.observations;
    rp.z.reserve(rp.rows.size());
    rp.Phi = CMat(static_cast<int>(rp.rows.size()), phi.Phi.cols);
    for (size_t i = 0; i < rp.rows.size(); ++i) {
        const int r = rp.rows[i];
        if (r < 0 || r >= total) throw ConfigError("restrict: mask index out of range");
        rp.z.push_back(bf.z[r]);
        for (int j = 0; j < phi.Phi.cols; ++j) rp.Phi(static_cast<int>(i), j) = phi.Phi(r, j);
    }
    return rp;
}

} // namespace caesar
