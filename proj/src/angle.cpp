#include "caesar/angle.hpp"

#include "caesar/linalg.hpp"

#include <cmath>

namespace caesar {

namespace {

inline cd phase(double arg) { return cd{std::cos(arg), std::sin(arg)}; }

// Temporal signature matrix for one receiver row: entry (n, j) =
// e^{j r~_j c(n)} e^{j v~_j n zeta(n)}, where c(n) is the carrier code the
// row observes in pulse n.
CMat signature_matrix(const RadarConfig& config, const std::vector<int>& row_codes,
                      const std::vector<int>& support) {
    const int N = config.N;
    const int S = static_cast<int>(support.size());
    CMat psi(N, S);
    for (int n = 0; n < N; ++n) {
        const int code = row_codes[n];
        const double zeta = config.zeta(code);
        for (int j = 0; j < S; ++j) {
            const int m_idx = support[j] / N;
            const int n_idx = support[j] % N;
            psi(n, j) = phase(normalized_range(m_idx, config.M) * code +
                              normalized_doppler(n_idx, N) * n * zeta);
        }
    }
    return psi;
}

[[noreturn]] void throw_isolation_failure(const CMat& psi, const std::vector<int>& support,
                                          double cond) {
    // identify the most collinear signature pair for the error message
    CMat G = gram(psi);
    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i < G.rows; ++i) {
        for (int j = i + 1; j < G.cols; ++j) {
            const double corr =
                std::abs(G(i, j)) / std::sqrt(G(i, i).real() * G(j, j).real());
            if (corr > best) {
                best = corr;
                bi = i;
                bj = j;
            }
        }
    }
    throw IsolationFailure("echo isolation failed: support cells " + std::to_string(support[bi]) +
                           " and " + std::to_string(support[bj]) +
                           " have nearly collinear signatures (cond = " + std::to_string(cond) +
                           ")");
}

} // namespace

std::vector<IsolatedEcho> isolate_echoes(const EchoData& Y, const std::vector<int>& support,
                                         const FrequencyPlan& plan, const RadarConfig& config,
                                         double cond_limit) {
    const int N = config.N, L = config.L;
    const int S = static_cast<int>(support.size());
    if (S < 1) throw ConfigError("isolate_echoes: empty support");
    if (S >= N) throw ConfigError("isolate_echoes: |support| must be < N");

    const bool wmar = (Y.mode == Mode::WMAR);
    const int row_count = wmar ? L * config.K : L;

    std::vector<IsolatedEcho> out(S);
    for (int j = 0; j < S; ++j) {
        out[j].s = support[j];
        out[j].echo.mode = Y.mode;
        out[j].echo.L = Y.L;
        out[j].echo.N = Y.N;
        out[j].echo.K = Y.K;
        out[j].echo.kappa2 = 0.0;
        out[j].echo.samples.assign(Y.samples.size(), cd{0.0, 0.0});
    }

    std::vector<int> row_codes(N);
    CVec y_row(N);
    for (int r = 0; r < row_count; ++r) {
        const int l = wmar ? r % L : r;
        const int k = wmar ? r / L : -1;
        for (int n = 0; n < N; ++n)
            row_codes[n] = plan.codes[n][wmar ? k : plan.alloc[n][l]];
        CMat psi = signature_matrix(config, row_codes, support);
        for (int n = 0; n < N; ++n) y_row[n] = wmar ? Y.at(l, n, k) : Y.at(l, n);
        LstsqResult fit;
        try {
            fit = lstsq(psi, y_row, cond_limit);
        } catch (const IllConditioned& e) {
            throw_isolation_failure(psi, support, e.condition);
        }
        for (int j = 0; j < S; ++j) {
            const cd gamma = fit.x[j];
            for (int n = 0; n < N; ++n) {
                if (wmar)
                    out[j].echo.at(l, n, k) = psi(n, j) * gamma;
                else
                    out[j].echo.at(l, n) = psi(n, j) * gamma;
            }
        }
    }
    return out;
}

AngleEstimate matched_filter_angle(const IsolatedEcho& isolated, const FrequencyPlan& plan,
                                   const RadarConfig& config, double grid_step) {
    const EchoData& Yhat = isolated.echo;
    if (kernels::norm2sq(Yhat.samples.data(), Yhat.samples.size()) == 0.0)
        throw UndefinedMetric("matched_filter_angle: all-zero isolated echo");

    const double half = config.beam_halfwidth();
    if (grid_step <= 0.0) grid_step = half / 100.0; // pi/(200 L)
    const int steps = std::max(1, static_cast<int>(std::round(2.0 * half / grid_step)));
    const int m_idx = isolated.s / config.N;
    const int n_idx = isolated.s % config.N;

    AngleEstimate est;
    est.s = isolated.s;
    double best = -1.0;
    cd best_corr{0.0, 0.0};
    double best_norm = 1.0;
    for (int i = 0; i <= steps; ++i) {
        const double cand = config.theta - half + grid_step * i;
        EchoData steer = target_signature(config, plan, m_idx, n_idx, cand);
        const cd corr =
            kernels::dotc(steer.samples.data(), Yhat.samples.data(), steer.samples.size());
        const double nsq = kernels::norm2sq(steer.samples.data(), steer.samples.size());
        const double obj = std::norm(corr) / nsq;
        if (obj > best) {
            best = obj;
            est.theta_hat = cand;
            best_corr = corr;
            best_norm = nsq;
        }
    }
    est.beta_refined = best_corr / best_norm;
    return est;
}

RefineResult refine_intensities(const EchoData& Y, const std::vector<AngleEstimate>& estimates,
                                const FrequencyPlan& plan, const RadarConfig& config,
                                double cond_limit) {
    RefineResult res;
    res.residual = norm2(Y.samples);
    if (estimates.empty()) return res;

    const int S = static_cast<int>(estimates.size());
    const int rows = static_cast<int>(Y.samples.size());
    CMat C(rows, S);
    for (int j = 0; j < S; ++j) {
        res.support.push_back(estimates[j].s);
        EchoData steer = target_signature(config, plan, estimates[j].s / config.N,
                                          estimates[j].s % config.N, estimates[j].theta_hat);
        for (int i = 0; i < rows; ++i) C(i, j) = steer.samples[i];
    }
    try {
        LstsqResult fit = lstsq(C, Y.samples, cond_limit);
        res.beta = std::move(fit.x);
        res.residual = fit.residual;
    } catch (const IllConditioned& e) {
        throw RefinementFailure("intensity refinement failed: steering matrix rank-deficient (" +
                                std::string(e.what()) + ")");
    }
    return res;
}

double angle_rmse(const std::vector<AngleEstimate>& estimates, const Scene& scene, int N) {
    double sum_sq = 0.0;
    int pairs = 0;
    for (const Target& t : scene.targets) {
        const int cell = Scene::cell_index(t.m_idx, t.n_idx, N);
        for (const AngleEstimate& e : estimates) {
            if (e.s == cell) {
                const double err = t.angle - e.theta_hat;
                sum_sq += err * err;
                ++pairs;
                break;
            }
        }
    }
    if (pairs == 0) throw UndefinedMetric("angle_rmse: no recovered scene cells");
    return std::sqrt(sum_sq / pairs);
}

} // namespace caesar
