#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caesar/analysis.hpp"
#include "caesar/recovery.hpp"

#include <algorithm>
#include <cmath>

using namespace caesar;

namespace {

RadarConfig paper_config(Mode mode) {
    RadarConfig cfg;
    cfg.mode = mode;
    cfg.K = (mode == Mode::FAR) ? 1 : 2;
    return cfg;
}

Scene on_grid_scene(const RadarConfig& cfg, std::vector<std::pair<int, int>> cells) {
    Scene scene;
    for (const auto& [m, n] : cells) scene.targets.push_back({cd{1.0, 0.0}, m, n, cfg.theta});
    return scene;
}

struct Problem {
    CVec z;
    CMat Phi;
    Scene scene;
};

Problem noiseless_problem(const RadarConfig& cfg, const std::vector<std::pair<int, int>>& cells,
                          uint64_t seed) {
    Rng rng(seed);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    const Scene scene = on_grid_scene(cfg, cells);
    Rng noise(1);
    const BeamformedData bf = beamform(synthesize(scene, plan, cfg, noise), plan, cfg);
    const SensingMatrix sm = build_sensing_matrix(plan, cfg);
    return {bf.z, sm.Phi, scene};
}

// brute-force single-atom matching: argmax_s |Phi_s^H z| / ||Phi_s||^2
int single_atom_oracle(const CVec& z, const CMat& Phi) {
    int best = -1;
    double best_score = -1.0;
    for (int j = 0; j < Phi.cols; ++j) {
        cd corr{0.0, 0.0};
        double nsq = 0.0;
        for (int r = 0; r < Phi.rows; ++r) {
            corr += std::conj(Phi(r, j)) * z[r];
            nsq += std::norm(Phi(r, j));
        }
        const double score = std::abs(corr) / nsq;
        if (score > best_score) {
            best_score = score;
            best = j;
        }
    }
    return best;
}

double l1_norm(const CVec& v) {
    double s = 0.0;
    for (const cd& x : v) s += std::abs(x);
    return s;
}

} // namespace

TEST_CASE("basis pursuit returns zero for zero observations") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    const Problem p = noiseless_problem(cfg, {{0, 0}}, 1);
    const CVec beta = basis_pursuit(CVec(p.z.size(), cd{0.0, 0.0}), p.Phi);
    for (const cd& v : beta) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("single-target recovery matches the matched-filter oracle") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    for (int draw = 0; draw < 10; ++draw) {
        Rng cells(500 + draw);
        const int m = cells.uniform_int(cfg.M);
        const int n = cells.uniform_int(cfg.N);
        const Problem p = noiseless_problem(cfg, {{m, n}}, 600 + draw);
        const int truth = Scene::cell_index(m, n, cfg.N);
        CHECK(single_atom_oracle(p.z, p.Phi) == truth);
        const CVec beta = basis_pursuit(p.z, p.Phi);
        const auto support = extract_support(beta, 1);
        REQUIRE(support.size() == 1);
        CHECK(support[0] == truth);
    }
}

TEST_CASE("two well-separated targets: feasible solution containing the truth") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    const Problem p = noiseless_problem(cfg, {{1, 3}, {6, 20}}, 7);
    const CVec beta = basis_pursuit(p.z, p.Phi);
    CVec r = matvec(p.Phi, beta);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= p.z[i];
    CHECK(norm2(r) <= 1e-6 * norm2(p.z));
    const auto support = extract_support(beta, 2);
    CHECK(std::find(support.begin(), support.end(), Scene::cell_index(1, 3, cfg.N)) !=
          support.end());
    CHECK(std::find(support.begin(), support.end(), Scene::cell_index(6, 20, cfg.N)) !=
          support.end());
}

TEST_CASE("tiny-scale oracle equivalence over 100 random plans") {
    RadarConfig cfg;
    cfg.M = 3;
    cfg.N = 3;
    cfg.K = 1;
    cfg.L = 3;
    cfg.mode = Mode::FAR;
    int agreements = 0;
    for (int draw = 0; draw < 100; ++draw) {
        Rng rng(1000 + draw);
        const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
        Rng pick(2000 + draw);
        const int m = pick.uniform_int(cfg.M);
        const int n = pick.uniform_int(cfg.N);
        Scene scene = on_grid_scene(cfg, {{m, n}});
        Rng noise(1);
        const BeamformedData bf = beamform(synthesize(scene, plan, cfg, noise), plan, cfg);
        const SensingMatrix sm = build_sensing_matrix(plan, cfg);
        const CVec beta = basis_pursuit(bf.z, sm.Phi);
        const auto support = extract_support(beta, 1);
        if (support[0] == single_atom_oracle(bf.z, sm.Phi) &&
            support[0] == Scene::cell_index(m, n, cfg.N))
            ++agreements;
    }
    CHECK(agreements == 100);
}

TEST_CASE("coherence below the MIP threshold implies exact support recovery") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    const int S = 2;
    int filtered = 0, exact = 0;
    for (int draw = 0; draw < 30; ++draw) {
        Rng cells(3000 + draw);
        const int m1 = cells.uniform_int(cfg.M), n1 = cells.uniform_int(cfg.N);
        int m2 = cells.uniform_int(cfg.M), n2 = cells.uniform_int(cfg.N);
        if (m1 == m2 && n1 == n2) n2 = (n2 + 1) % cfg.N;
        const Problem p = noiseless_problem(cfg, {{m1, n1}, {m2, n2}}, 4000 + draw);
        const double mu = coherence_direct(p.Phi, cfg.M, cfg.N).mu;
        if (mu >= 1.0 / (2 * S - 1)) continue;
        ++filtered;
        const auto support = extract_support(basis_pursuit(p.z, p.Phi), S);
        std::set<int> truth = {Scene::cell_index(m1, n1, cfg.N), Scene::cell_index(m2, n2, cfg.N)};
        if (std::set<int>(support.begin(), support.end()) == truth) ++exact;
    }
    CHECK(exact == filtered);
}

TEST_CASE("lasso shrinks to zero at and above the critical lambda") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    const Problem p = noiseless_problem(cfg, {{2, 5}}, 11);
    const double lambda_max = norm_inf(matvec_adj(p.Phi, p.z));
    const CVec beta = lasso(p.z, p.Phi, lambda_max * 1.0001);
    for (const cd& v : beta) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("lasso approaches basis pursuit as lambda -> 0") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    const Problem p = noiseless_problem(cfg, {{4, 9}, {1, 27}}, 12);
    const CVec bp = basis_pursuit(p.z, p.Phi);
    const double bp_l1 = l1_norm(bp);
    const double lambda_max = norm_inf(matvec_adj(p.Phi, p.z));

    double prev_residual = std::numeric_limits<double>::max();
    double last_l1 = 0.0;
    for (const double scale : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const CVec beta = lasso(p.z, p.Phi, scale * lambda_max);
        CVec r = matvec(p.Phi, beta);
        for (size_t i = 0; i < r.size(); ++i) r[i] -= p.z[i];
        const double res = norm2(r);
        CHECK(res <= prev_residual * (1.0 + 1e-9));
        prev_residual = res;
        last_l1 = l1_norm(beta);
    }
    CHECK(prev_residual <= 1e-3 * norm2(p.z));
    CHECK(last_l1 == doctest::Approx(bp_l1).epsilon(0.02));
}

TEST_CASE("lasso satisfies its KKT conditions") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    Rng rng(13);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    const SensingMatrix sm = build_sensing_matrix(plan, cfg);
    Rng zr(14);
    CVec z(sm.Phi.rows);
    for (cd& v : z) v = cd{zr.uniform(-1, 1), zr.uniform(-1, 1)}; // pure noise problem
    const double lambda = 0.1 * norm_inf(matvec_adj(sm.Phi, z));
    const CVec beta = lasso(z, sm.Phi, lambda);
    CVec r = matvec(sm.Phi, beta);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= z[i];
    const CVec g = matvec_adj(sm.Phi, r);
    const double tol = 1e-5 * lambda;
    for (int j = 0; j < sm.Phi.cols; ++j) {
        const double mag = std::abs(beta[j]);
        if (mag > 0.0) CHECK(std::abs(g[j] + lambda * beta[j] / mag) <= tol);
        else CHECK(std::abs(g[j]) <= lambda + tol);
    }
}

TEST_CASE("single noisy target: largest coefficient sits on the true cell") {
    RadarConfig cfg = paper_config(Mode::CAESAR);
    cfg.kappa2 = 1e-2; // high SNR
    Rng rng(15);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    const Scene scene = on_grid_scene(cfg, {{5, 18}});
    Rng noise(16);
    const BeamformedData bf = beamform(synthesize(scene, plan, cfg, noise), plan, cfg);
    const SensingMatrix sm = build_sensing_matrix(plan, cfg);
    const double lambda = 0.1 * norm_inf(matvec_adj(sm.Phi, bf.z));
    const CVec beta = lasso(bf.z, sm.Phi, lambda);
    const auto support = extract_support(beta, 1);
    CHECK(support[0] == Scene::cell_index(5, 18, cfg.N));
}

TEST_CASE("support extraction") {
    SUBCASE("one-hot vector") {
        CVec beta(8, cd{0.0, 0.0});
        beta[5] = cd{0.0, 2.0};
        CHECK(extract_support(beta, 1) == std::vector<int>{5});
    }
    SUBCASE("all-zero vector breaks ties by lower index") {
        const CVec beta(8, cd{0.0, 0.0});
        CHECK(extract_support(beta, 2) == std::vector<int>{0, 1});
    }
    SUBCASE("order statistics") {
        CVec beta = {cd{3, 0}, cd{1, 0}, cd{2, 0}, cd{0, 0}};
        CHECK(extract_support(beta, 2) == std::vector<int>{0, 2});
    }
    SUBCASE("scaling equivariance") {
        CVec beta = {cd{0.3, 0.1}, cd{-1, 0.5}, cd{0.2, -0.9}, cd{0, 0.05}};
        CVec scaled(beta);
        for (cd& v : scaled) v *= 37.5;
        CHECK(extract_support(beta, 2) == extract_support(scaled, 2));
    }
    SUBCASE("magnitude-threshold mode") {
        CVec beta = {cd{1.0, 0.0}, cd{0.2, 0.0}, cd{0.4, 0.0}};
        CHECK(extract_support_threshold(beta, 0.3) == std::vector<int>{0, 2});
        CHECK(extract_support_threshold(CVec(4, cd{0.0, 0.0})).empty());
    }
}

TEST_CASE("hit rate") {
    RadarConfig cfg;
    Scene scene = on_grid_scene(cfg, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
    std::vector<int> exact;
    for (const Target& t : scene.targets)
        exact.push_back(Scene::cell_index(t.m_idx, t.n_idx, cfg.N));

    CHECK(hit_rate(exact, scene, cfg.N) == 1.0);
    CHECK(hit_rate({7, 8, 9}, scene, cfg.N) == 0.0);
    const std::vector<int> three = {exact[0], exact[1], exact[2], 200, 201};
    CHECK(hit_rate(three, scene, cfg.N) == doctest::Approx(0.6));
    CHECK_THROWS_AS(hit_rate(exact, Scene{}, cfg.N), UndefinedMetric);
}
