// Command-line front end: run experiment specs, emit analysis reports, and
// exercise the core invariants as a quick self-test.

#include "caesar/analysis.hpp"
#include "caesar/experiment.hpp"
#include "caesar/specfile.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace {

using namespace caesar;

int cmd_run(const std::string& spec_path, const std::string& out_prefix,
            const std::string& format, std::optional<uint64_t> seed_override,
            std::optional<int> trials_override, bool quiet) {
    ExperimentSpec spec = parse_spec_file(spec_path);
    if (seed_override) spec.seed = *seed_override;
    if (trials_override) spec.trials = *trials_override;
    spec.validate();

    const auto rows = run_experiment(spec);
    if (!quiet) {
        for (const auto& r : rows) {
            std::cerr << r.label() << " " << r.sweep_name << "=" << r.sweep_value
                      << " hit_rate=" << r.hit_rate << " failures=" << r.failures << " ("
                      << r.wall_seconds << " s)\n";
        }
    }
    const auto written = emit_results(rows, out_prefix, format);
    for (const auto& p : written) std::cout << p << "\n";
    return 0;
}

int cmd_analyze(int M, int N, int K, double u, double delta, int trials, uint64_t seed,
                const std::string& out_path) {
    nlohmann::json report;
    report["params"] = {{"M", M}, {"N", N}, {"K", K}, {"u", u}, {"delta", delta},
                        {"trials", trials}, {"seed", seed}};

    const double V = variance_proxy(M, N, K, u);
    report["variance_proxy"] = V;

    double bound = 0.0;
    int S_max = 0;
    try {
        bound = sparsity_bound(M, N, K, u, delta);
        S_max = static_cast<int>(std::floor(bound));
        report["sparsity_bound"] = bound;
        report["sparsity_bound_floor"] = S_max;
    } catch (const UndefinedMetric& e) {
        report["sparsity_bound"] = nullptr;
        report["sparsity_bound_note"] = e.what();
    }

    // closed-form moments at representative offsets
    nlohmann::json moments = nlohmann::json::array();
    const std::pair<int, int> offsets[] = {{0, 1}, {1, 0}, {1, 1}};
    for (const auto& [dm, dn] : offsets) {
        if (dm >= M || dn >= N || (dm == 0 && dn == 0)) continue;
        const ChiMoments cm = chi_moments_closed_form(M, N, K, u, dm, dn);
        moments.push_back({{"delta_m", dm},
                           {"delta_n", dn},
                           {"variance_sum", cm.variance_sum},
                           {"mean_magnitude", std::abs(cm.means[0])}});
    }
    report["chi_moments"] = moments;

    if (V > 0.0) {
        const TailBounds tb = tail_bounds(V, N, u, V / 2.0, std::sqrt(N) / 2.0);
        report["tail_bounds_example"] = {{"eps", V / 2.0},
                                         {"t", std::sqrt(N) / 2.0},
                                         {"chi_tail", tb.chi_tail},
                                         {"lambda_tail", tb.lambda_tail}};
    }

    // empirical coherence over plan/mask draws
    RadarConfig cfg;
    cfg.M = M;
    cfg.N = N;
    cfg.K = K;
    cfg.L = K; // element count is irrelevant to the coherence statistics
    cfg.mode = Mode::WMAR;
    const double threshold = S_max >= 1 ? 1.0 / (2.0 * S_max - 1.0) : 1.0;
    const MuSampleStats stats = mu_monte_carlo(cfg, u, trials, threshold, seed);
    report["mu"] = {{"trials", stats.trials},
                    {"empty_masks", stats.empty_masks},
                    {"mean", stats.mean},
                    {"max", stats.max},
                    {"threshold", stats.threshold},
                    {"p_le_threshold", stats.p_le_threshold}};

    const std::string text = report.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        os << text << "\n";
        std::cout << out_path << "\n";
    }
    return 0;
}

int selftest_check(const char* name, bool ok, int& failures) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
    return failures;
}

int cmd_selftest() {
    int failures = 0;

    { // kernel backends agree
        Rng rng(7);
        const int rows = 13, cols = 37;
        CMat A(rows, cols);
        CVec x(cols);
        for (cd& v : A.a) v = cd{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        for (cd& v : x) v = cd{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CVec ys(rows), ya(rows);
        kernels::scalar().matvec(A.a.data(), x.data(), ys.data(), rows, cols);
        kernels::matvec(A.a.data(), x.data(), ya.data(), rows, cols);
        double err = 0.0;
        for (int i = 0; i < rows; ++i) err = std::max(err, std::abs(ys[i] - ya[i]));
        selftest_check(("kernel equivalence (" + kernels::backend_name() + ")").c_str(),
                       err < 1e-10, failures);
    }

    { // beamforming gain at delta = 0 matches alpha_K for both schemes
        bool ok = true;
        for (const Mode mode : {Mode::CAESAR, Mode::WMAR}) {
            RadarConfig cfg;
            cfg.mode = mode;
            Rng rng(11);
            const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
            Scene scene;
            scene.targets.push_back({cd{1.0, 0.0}, 0, 0, cfg.theta});
            Rng noise(1);
            const EchoData echo = synthesize(scene, plan, cfg, noise);
            const BeamformedData bf = beamform(echo, plan, cfg);
            const double alpha = mode == Mode::CAESAR
                                     ? std::pow(cfg.L / double(cfg.K), 2.0)
                                     : cfg.L * cfg.L / std::sqrt(double(cfg.K));
            for (const cd& z : bf.z) ok = ok && std::abs(z - cd{alpha, 0.0}) < 1e-9 * alpha;
        }
        selftest_check("receive beamforming gain (delta = 0)", ok, failures);
    }

    { // model consistency: z = Phi beta for an on-beam noiseless scene
        RadarConfig cfg;
        cfg.mode = Mode::CAESAR;
        Rng rng(23);
        const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
        Scene scene;
        scene.targets.push_back({cd{1.0, 0.0}, 3, 17, cfg.theta});
        scene.targets.push_back({cd{1.0, 0.0}, 5, 2, cfg.theta});
        Rng noise(1);
        const EchoData echo = synthesize(scene, plan, cfg, noise);
        const BeamformedData bf = beamform(echo, plan, cfg);
        const SensingMatrix sm = build_sensing_matrix(plan, cfg);
        CVec beta(cfg.M * cfg.N, cd{0.0, 0.0});
        const double alpha = std::pow(cfg.L / double(cfg.K), 2.0);
        for (const Target& t : scene.targets)
            beta[Scene::cell_index(t.m_idx, t.n_idx, cfg.N)] = t.beta * alpha;
        const CVec model = matvec(sm.Phi, beta);
        double err = 0.0;
        for (size_t i = 0; i < model.size(); ++i) err = std::max(err, std::abs(model[i] - bf.z[i]));
        selftest_check("beamformed model consistency z = Phi beta", err < 1e-8 * alpha, failures);
    }

    { // coherence fast path equals the exhaustive scan
        RadarConfig cfg;
        cfg.M = 8;
        cfg.N = 8;
        cfg.K = 2;
        cfg.L = 2;
        cfg.mode = Mode::WMAR;
        bool ok = true;
        for (int t = 0; t < 5; ++t) {
            Rng rng(100 + t);
            const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
            const AvailabilityMask mask = apply_jamming(cfg, 0.7, AvailabilityMask::Pattern::Pulse, rng);
            if (mask.pulses.empty()) continue;
            const SensingMatrix sm = build_sensing_matrix(plan, cfg, ZetaMode::Unit);
            BeamformedData bf;
            bf.K = cfg.K;
            bf.N = cfg.N;
            bf.z.assign(cfg.K * cfg.N, cd{0.0, 0.0});
            const RestrictedProblem rp = restrict_problem(bf, sm, mask);
            const double direct = coherence_direct(rp.Phi, cfg.M, cfg.N).mu;
            const double fast = coherence_fast(plan, mask, cfg).mu;
            ok = ok && std::abs(direct - fast) < 1e-10;
        }
        selftest_check("coherence fast/direct equality", ok, failures);
    }

    { // deterministic sampling
        RadarConfig cfg;
        Rng a(99), b(99);
        const FrequencyPlan p1 = sample_frequency_plan(cfg, a);
        const FrequencyPlan p2 = sample_frequency_plan(cfg, b);
        selftest_check("plan sampling determinism", p1.codes == p2.codes && p1.alloc == p2.alloc,
                       failures);
    }

    std::cout << (failures == 0 ? "selftest: all checks passed\n"
                                : "selftest: " + std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-carrier frequency-agile radar simulation and recovery toolkit"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run the Monte Carlo experiment described by a spec file");
    std::string spec_path, out_prefix = "results", format = "csv";
    std::optional<uint64_t> seed_override;
    std::optional<int> trials_override;
    bool quiet = false;
    run->add_option("spec", spec_path, "experiment spec file")->required();
    run->add_option("--out", out_prefix, "output path prefix (default: results)");
    run->add_option("--format", format, "csv | json | both")->default_val("csv");
    run->add_option("--seed", seed_override, "override the spec seed");
    run->add_option("--trials", trials_override, "override the trial count");
    run->add_flag("--quiet", quiet, "suppress per-row progress on stderr");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Coherence and sparsity-bound report");
    int M = 8, N = 32, K = 2, trials = 1000;
    double u = 1.0, delta = 0.1;
    uint64_t seed = 1;
    std::string out_path;
    analyze->add_option("--M", M, "available carriers")->default_val(8);
    analyze->add_option("--N", N, "pulses per CPI")->default_val(32);
    analyze->add_option("--K", K, "carriers per pulse")->default_val(2);
    analyze->add_option("--u", u, "pulse survival probability")->default_val(1.0);
    analyze->add_option("--delta", delta, "failure probability for the bound")->default_val(0.1);
    analyze->add_option("--trials", trials, "Monte Carlo draws")->default_val(1000);
    analyze->add_option("--seed", seed, "RNG seed")->default_val(1);
    analyze->add_option("--out", out_path, "write the JSON report here instead of stdout");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(spec_path, out_prefix, format, seed_override, trials_override, quiet);
        if (analyze->parsed()) return cmd_analyze(M, N, K, u, delta, trials, seed, out_path);
        if (selftest->parsed()) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
