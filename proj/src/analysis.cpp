#include "caesar/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace caesar {

namespace {
inline cd phase(double arg) { return cd{std::cos(arg), std::sin(arg)}; }
} // namespace

CoherenceReport coherence_direct(const CMat& Phi, int M, int N) {
    if (Phi.cols < 2) throw ConfigError("coherence_direct: need at least two columns");
    const int cols = Phi.cols, rows = Phi.rows;

    // column-major copy so pair scans are contiguous
    std::vector<cd> colbuf(static_cast<size_t>(cols) * rows);
    std::vector<double> colnorm(cols);
    for (int j = 0; j < cols; ++j) {
        for (int r = 0; r < rows; ++r) colbuf[static_cast<size_t>(j) * rows + r] = Phi(r, j);
        colnorm[j] = std::sqrt(
            kernels::norm2sq(colbuf.data() + static_cast<size_t>(j) * rows, rows));
        if (colnorm[j] == 0.0)
            throw ConfigError("coherence_direct: zero column cannot be normalized");
    }

    CoherenceReport rep;
    int bi = 0, bj = 1;
    for (int i = 0; i < cols; ++i) {
        const cd* ci = colbuf.data() + static_cast<size_t>(i) * rows;
        for (int j = i + 1; j < cols; ++j) {
            const cd* cj = colbuf.data() + static_cast<size_t>(j) * rows;
            const double corr = std::abs(kernels::dotc(ci, cj, rows)) / (colnorm[i] * colnorm[j]);
            if (corr > rep.mu) {
                rep.mu = corr;
                bi = i;
                bj = j;
            }
        }
    }
    const int m1 = bi / N, n1 = bi % N;
    const int m2 = bj / N, n2 = bj % N;
    rep.delta_m = ((m1 - m2) % M + M) % M;
    rep.delta_n = ((n1 - n2) % N + N) % N;
    return rep;
}

cd chi_value(const std::vector<std::vector<int>>& codes, const std::vector<int>& pulses, int M,
             int N, int K, int dm, int dn) {
    cd chi{0.0, 0.0};
    for (int n : pulses) {
        cd inner{0.0, 0.0};
        for (int k = 0; k < K; ++k) inner += phase(kTwoPi * dm * codes[n][k] / M);
        chi += inner * phase(kTwoPi * dn * n / N) / static_cast<double>(K);
    }
    return chi;
}

CoherenceReport coherence_fast(const FrequencyPlan& plan, const AvailabilityMask& mask,
                               const RadarConfig& config) {
    if (mask.pattern == AvailabilityMask::Pattern::Observation)
        throw ConfigError("coherence_fast: requires a pulse-selective (or full) mask");
    if (mask.pulses.empty()) throw ConfigError("coherence_fast: empty pulse set");
    const int M = config.M, N = config.N, K = config.K;

    // per-pulse code sums for every range offset
    CMat code_sum(M, static_cast<int>(mask.pulses.size()));
    for (int dm = 0; dm < M; ++dm) {
        for (size_t i = 0; i < mask.pulses.size(); ++i) {
            cd s{0.0, 0.0};
            for (int k = 0; k < K; ++k)
                s += phase(kTwoPi * dm * plan.codes[mask.pulses[i]][k] / M);
            code_sum(dm, static_cast<int>(i)) = s / static_cast<double>(K);
        }
    }

    CoherenceReport rep;
    rep.lambda_size = static_cast<int>(mask.pulses.size());
    for (int dm = 0; dm < M; ++dm) {
        for (int dn = 0; dn < N; ++dn) {
            if (dm == 0 && dn == 0) continue;
            cd chi{0.0, 0.0};
            for (size_t i = 0; i < mask.pulses.size(); ++i)
                chi += code_sum(dm, static_cast<int>(i)) *
                       phase(kTwoPi * dn * mask.pulses[i] / N);
            const double mu = std::abs(chi) / rep.lambda_size;
            if (mu > rep.mu) {
                rep.mu = mu;
                rep.delta_m = dm;
                rep.delta_n = dn;
            }
        }
    }
    return rep;
}

namespace {

void validate_offset(int M, int N, int dm, int dn) {
    if (dm < 0 || dm >= M || dn < 0 || dn >= N)
        throw ConfigError("chi offset out of range");
    if (dm == 0 && dn == 0) throw ConfigError("chi offset (0,0) is excluded");
    if (M == 1 && dm != 0) throw ConfigError("no nonzero range offset exists for M = 1");
}

double offdiag_variance_sum(int M, int N, int K, double u) {
    // (M-K)/((M-1)K) u N, with the K = M case degenerating to zero
    if (M == K) return 0.0;
    return (static_cast<double>(M - K) / (static_cast<double>(M - 1) * K)) * u * N;
}

} // namespace

ChiMoments chi_moments_closed_form(int M, int N, int K, double u, int dm, int dn) {
    if (K < 1 || K > M) throw ConfigError("chi moments: require 1 <= K <= M");
    if (!(u > 0.0 && u <= 1.0)) throw ConfigError("chi moments: require 0 < u <= 1");
    validate_offset(M, N, dm, dn);

    ChiMoments mom;
    mom.means.assign(N, cd{0.0, 0.0});
    if (dm == 0) {
        for (int n = 0; n < N; ++n) mom.means[n] = u * phase(kTwoPi * dn * n / N);
        mom.variance_sum = u * (1.0 - u) * N;
    } else {
        mom.variance_sum = offdiag_variance_sum(M, N, K, u);
    }
    return mom;
}

ChiEmpirical chi_empirical_moments(int M, int N, int K, double u, int dm, int dn, int trials,
                                   Rng& rng) {
    if (trials < 1) throw ConfigError("chi empirical moments: trials must be >= 1");
    validate_offset(M, N, dm, dn);
    const ChiMoments closed = chi_moments_closed_form(M, N, K, u, dm, dn);

    std::vector<cd> sum(N, cd{0.0, 0.0});
    std::vector<double> sum_sq(N, 0.0);
    double max_dev = 0.0;

    std::vector<int> pool(M);
    std::vector<cd> chi_n(N);
    for (int t = 0; t < trials; ++t) {
        for (int n = 0; n < N; ++n) {
            const bool present = rng.uniform01() < u;
            // codes drawn regardless of the mask so the stream does not
            // depend on u
            cd inner{0.0, 0.0};
            std::iota(pool.begin(), pool.end(), 0);
            for (int k = 0; k < K; ++k) {
                const int j = k + rng.uniform_int(M - k);
                std::swap(pool[k], pool[j]);
                inner += phase(kTwoPi * dm * pool[k] / M);
            }
            chi_n[n] = present ? inner * phase(kTwoPi * dn * n / N) / static_cast<double>(K)
                               : cd{0.0, 0.0};
            sum[n] += chi_n[n];
            sum_sq[n] += std::norm(chi_n[n]);
            max_dev = std::max(max_dev, std::abs(chi_n[n] - closed.means[n]));
        }
    }

    ChiEmpirical emp;
    emp.means.resize(N);
    emp.max_center_dev = max_dev;
    const double T = static_cast<double>(trials);
    for (int n = 0; n < N; ++n) {
        emp.means[n] = sum[n] / T;
        const double second = sum_sq[n] / T;
        double var = second - std::norm(emp.means[n]);
        if (trials > 1) var *= T / (T - 1.0);
        emp.variance_sum += std::max(0.0, var);
    }
    return emp;
}

double variance_proxy(int M, int N, int K, double u) {
    return std::max(u * (1.0 - u) * N, offdiag_variance_sum(M, N, K, u));
}

double sparsity_bound(int M, int N, int K, double u, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("sparsity_bound: require 0 < delta < 1");
    if (K < 1 || K > M) throw ConfigError("sparsity_bound: require 1 <= K <= M");
    if (!(u > 0.0 && u <= 1.0)) throw ConfigError("sparsity_bound: require 0 < u <= 1");
    if (M * N < 2) throw ConfigError("sparsity_bound: offset set is empty");
    const double V = variance_proxy(M, N, K, u);
    if (V <= 0.0)
        throw UndefinedMetric("sparsity_bound: V = 0 (u = 1 and K = M), bound undefined");

    const double xi = static_cast<double>(M) * N - 1.0;
    const double denom = 1.0 + std::sqrt(2.0 * (std::log(2.0 * xi) - std::log(delta)));
    const double lead = (u * N / std::sqrt(V)) / denom;
    const double lift = 0.5 * (1.0 + 1.0 / (2.0 * std::sqrt(2.0 * N) * u));
    return lead * lift - std::sqrt(N / (32.0 * V)) + 0.5;
}

TailBounds tail_bounds(double V, int N, double u, double eps, double t) {
    if (!(V > 0.0)) throw ConfigError("tail_bounds: V must be positive");
    if (!(u > 0.0 && u <= 1.0)) throw ConfigError("tail_bounds: require 0 < u <= 1");
    if (eps < 0.0 || eps > V) throw ConfigError("tail_bounds: require 0 <= eps <= V");
    if (!(t > 0.0)) throw ConfigError("tail_bounds: require t > 0");
    TailBounds b;
    b.chi_tail = std::exp(-eps * eps / (4.0 * V));
    b.lambda_tail = std::exp(-2.0 * t * t / N);
    return b;
}

MuSampleStats mu_monte_carlo(const RadarConfig& config, double u, int trials, double threshold,
                             uint64_t seed) {
    if (trials < 1) throw ConfigError("mu_monte_carlo: trials must be >= 1");
    MuSampleStats stats;
    stats.trials = trials;
    stats.threshold = threshold;
    double sum = 0.0;
    int ok = 0, counted = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(Rng::mix(seed, static_cast<uint64_t>(t)));
        const FrequencyPlan plan = sample_frequency_plan(config, rng);
        const AvailabilityMask mask =
            u < 1.0 ? apply_jamming(config, u, AvailabilityMask::Pattern::Pulse, rng)
                    : full_mask(config.N, config.K);
        if (mask.pulses.empty()) {
            ++stats.empty_masks;
            continue; // counts as exceeding the threshold
        }
        const CoherenceReport rep = coherence_fast(plan, mask, config);
        sum += rep.mu;
        ++counted;
        stats.max = std::max(stats.max, rep.mu);
        if (rep.mu <= threshold) ++ok;
    }
    stats.mean = counted > 0 ? sum / counted : 0.0;
    stats.p_le_threshold = static_cast<double>(ok) / trials;
    return stats;
}

} // namespace caesar
