#include "caesar/model.hpp"

#include <algorithm>
#include <numeric>

namespace caesar {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::FAR: return "FAR";
        case Mode::WMAR: return "WMAR";
        case Mode::CAESAR: return "CAESAR";
    }
    return "?";
}

Mode mode_from_string(const std::string& s) {
    if (s == "FAR") return Mode::FAR;
    if (s == "WMAR") return Mode::WMAR;
    if (s == "CAESAR") return Mode::CAESAR;
    throw ConfigError("unknown mode: " + s);
}

void RadarConfig::validate() const {
    if (fc <= 0.0) throw ConfigError("fc must be positive");
    if (delta_f <= 0.0) throw ConfigError("delta_f must be positive");
    if (M < 1) throw ConfigError("M must be >= 1");
    if (N < 1) throw ConfigError("N must be >= 1");
    if (K < 1 || K > M) throw ConfigError("K must satisfy 1 <= K <= M");
    if (mode == Mode::FAR && K != 1) throw ConfigError("FAR requires K = 1");
    if (L < 1) throw ConfigError("L must be >= 1");
    if (L % K != 0) throw ConfigError("L must be divisible by K");
    if (d < 0.0) throw ConfigError("d must be nonnegative (0 selects c/(2 fc))");
    if (kappa2 < 0.0) throw ConfigError("kappa2 must be nonnegative");
}

FrequencyPlan sample_frequency_plan(const RadarConfig& config, Rng& rng) {
    config.validate();
    const int M = config.M, N = config.N, K = config.K, L = config.L;

    FrequencyPlan plan;
    plan.codes.resize(N);
    plan.alloc.assign(N, std::vector<int>(L, 0));

    // Per-pulse K-subset via partial Fisher-Yates; sorting makes the stored
    // representation canonical without biasing the subset distribution.
    std::vector<int> pool(M);
    for (int n = 0; n < N; ++n) {
        std::iota(pool.begin(), pool.end(), 0);
        for (int k = 0; k < K; ++k) {
            const int j = k + rng.uniform_int(M - k);
            std::swap(pool[k], pool[j]);
        }
        plan.codes[n].assign(pool.begin(), pool.begin() + K);
        std::sort(plan.codes[n].begin(), plan.codes[n].end());
    }

    if (config.mode == Mode::CAESAR && K > 1) {
        // Uniform balanced partition: shuffle elements, slice into K blocks
        // of L/K.
        const int block = L / K;
        std::vector<int> elems(L);
        for (int n = 0; n < N; ++n) {
            std::iota(elems.begin(), elems.end(), 0);
            for (int i = L - 1; i > 0; --i) {
                const int j = rng.uniform_int(i + 1);
                std::swap(elems[i], elems[j]);
            }
            for (int k = 0; k < K; ++k)
                for (int b = 0; b < block; ++b) plan.alloc[n][elems[k * block + b]] = k;
        }
    }
    return plan;
}

Scene sample_scene(const RadarConfig& config, int S, Rng& rng) {
    config.validate();
    const int cells = config.M * config.N;
    if (S < 0) throw ConfigError("scene size must be nonnegative");
    if (S > cells) throw ConfigError("infeasible scene: S exceeds M*N grid cells");

    // Distinct cells without replacement (partial Fisher-Yates over the grid).
    std::vector<int> flat(cells);
    std::iota(flat.begin(), flat.end(), 0);
    for (int i = 0; i < S; ++i) {
        const int j = i + rng.uniform_int(cells - i);
        std::swap(flat[i], flat[j]);
    }

    const double half = config.beam_halfwidth();
    Scene scene;
    scene.targets.resize(S);
    for (int i = 0; i < S; ++i) {
        Target& t = scene.targets[i];
        t.beta = cd{1.0, 0.0};
        t.m_idx = flat[i] / config.N;
        t.n_idx = flat[i] % config.N;
        t.angle = config.theta + rng.uniform(-half, half);
    }
    return scene;
}

} // namespace caesar
