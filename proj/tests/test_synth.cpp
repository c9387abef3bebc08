#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caesar/synth.hpp"

#include <cmath>
#include <sstream>

using namespace caesar;

namespace {

RadarConfig paper_config(Mode mode) {
    RadarConfig cfg;
    cfg.mode = mode;
    cfg.K = (mode == Mode::FAR) ? 1 : 2;
    return cfg;
}

} // namespace

TEST_CASE("transmit gain at boresight") {
    Rng rng(1);
    const RadarConfig caesar_cfg = paper_config(Mode::CAESAR);
    const FrequencyPlan plan = sample_frequency_plan(caesar_cfg, rng);
    // sub-array of L/K = 5 elements, all phase factors equal one
    CHECK(std::abs(transmit_gain(plan, caesar_cfg, 0, 0, 0.0) - cd{5.0, 0.0}) < 1e-12);
    CHECK(std::abs(transmit_gain(plan, caesar_cfg, 13, 1, 0.0) - cd{5.0, 0.0}) < 1e-12);

    const RadarConfig wmar_cfg = paper_config(Mode::WMAR);
    Rng rng2(1);
    const FrequencyPlan wplan = sample_frequency_plan(wmar_cfg, rng2);
    CHECK(std::abs(transmit_gain(wplan, wmar_cfg, 0, 0, 0.0) - cd{10.0, 0.0}) < 1e-12);
}

TEST_CASE("two-element gain null at half-wavelength offset") {
    // L = 2, K = 1: gain = 1 + e^{-j pi} = 0 when 2 pi Omega d delta / c = pi
    RadarConfig cfg;
    cfg.mode = Mode::CAESAR;
    cfg.L = 2;
    cfg.K = 1;
    Rng rng(2);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    const double omega = cfg.carrier(plan.codes[0][0]);
    const double delta = kSpeedOfLight / (2.0 * omega * cfg.spacing());
    CHECK(std::abs(transmit_gain(plan, cfg, 0, 0, delta)) < 1e-12);
}

TEST_CASE("gain magnitude is bounded by the sub-array size") {
    Rng rng(3);
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    const RadarConfig wcfg = paper_config(Mode::WMAR);
    Rng rng2(3);
    const FrequencyPlan wplan = sample_frequency_plan(wcfg, rng2);
    Rng drng(4);
    for (int t = 0; t < 200; ++t) {
        const double delta = drng.uniform(-2.0, 2.0);
        const int n = drng.uniform_int(cfg.N);
        const int k = drng.uniform_int(cfg.K);
        CHECK(std::abs(transmit_gain(plan, cfg, n, k, delta)) <= 5.0 + 1e-12);
        CHECK(std::abs(transmit_gain(wplan, wcfg, n, k, delta)) <= 10.0 + 1e-12);
    }
}

TEST_CASE("transmit gain rejects bad indices") {
    Rng rng(5);
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    CHECK_THROWS_AS(transmit_gain(plan, cfg, cfg.N, 0, 0.0), ConfigError);
    CHECK_THROWS_AS(transmit_gain(plan, cfg, 0, cfg.K, 0.0), ConfigError);
}

TEST_CASE("single boresight target at the grid origin gives constant entries") {
    SUBCASE("CAESAR: L/K") {
        const RadarConfig cfg = paper_config(Mode::CAESAR);
        Rng rng(6);
        const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
        Scene scene;
        scene.targets.push_back({cd{1.0, 0.0}, 0, 0, 0.0});
        Rng noise(1);
        const EchoData echo = synthesize(scene, plan, cfg, noise);
        for (const cd& s : echo.samples) CHECK(std::abs(s - cd{5.0, 0.0}) < 1e-10);
    }
    SUBCASE("WMAR: L/sqrt(K)") {
        const RadarConfig cfg = paper_config(Mode::WMAR);
        Rng rng(6);
        const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
        Scene scene;
        scene.targets.push_back({cd{1.0, 0.0}, 0, 0, 0.0});
        Rng noise(1);
        const EchoData echo = synthesize(scene, plan, cfg, noise);
        const double expect = 10.0 / std::sqrt(2.0);
        for (const cd& s : echo.samples) CHECK(std::abs(s - cd{expect, 0.0}) < 1e-10);
    }
}

TEST_CASE("synthesis is linear in the scene") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    Rng rng(7);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    Rng srng(8);
    const Scene both = sample_scene(cfg, 2, srng);
    Scene first, second;
    first.targets.push_back(both.targets[0]);
    second.targets.push_back(both.targets[1]);

    Rng n1(1), n2(1), n3(1);
    const EchoData e_both = synthesize(both, plan, cfg, n1);
    const EchoData e_first = synthesize(first, plan, cfg, n2);
    const EchoData e_second = synthesize(second, plan, cfg, n3);
    for (size_t i = 0; i < e_both.samples.size(); ++i)
        CHECK(std::abs(e_both.samples[i] - e_first.samples[i] - e_second.samples[i]) < 1e-11);
}

TEST_CASE("FAR is the K = 1 special case of both schemes") {
    RadarConfig ccfg;
    ccfg.mode = Mode::CAESAR;
    ccfg.K = 1;
    RadarConfig wcfg = ccfg;
    wcfg.mode = Mode::WMAR;

    Rng prc(9), prw(9);
    const FrequencyPlan cplan = sample_frequency_plan(ccfg, prc);
    const FrequencyPlan wplan = sample_frequency_plan(wcfg, prw);
    CHECK(cplan.codes == wplan.codes);

    Rng src(10), srw(10);
    const Scene cscene = sample_scene(ccfg, 3, src);
    const Scene wscene = sample_scene(wcfg, 3, srw);

    Rng nrc(11), nrw(11);
    const EchoData ce = synthesize(cscene, cplan, ccfg, nrc);
    const EchoData we = synthesize(wscene, wplan, wcfg, nrw);
    REQUIRE(ce.samples.size() == we.samples.size());
    for (size_t i = 0; i < ce.samples.size(); ++i)
        CHECK(std::abs(ce.samples[i] - we.samples[i]) < 1e-12);
}

TEST_CASE("noise variance matches kappa2 empirically") {
    RadarConfig cfg = paper_config(Mode::CAESAR);
    cfg.kappa2 = 2.5;
    Rng rng(12);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    const Scene empty;
    Rng noise(13);
    double sum_sq = 0.0;
    long count = 0;
    for (int t = 0; t < 50; ++t) {
        const EchoData echo = synthesize(empty, plan, cfg, noise);
        for (const cd& s : echo.samples) {
            sum_sq += std::norm(s);
            ++count;
        }
    }
    const double var = sum_sq / count; // 16k samples -> ~2% standard error
    CHECK(var == doctest::Approx(2.5).epsilon(0.08));
}

TEST_CASE("jamming masks") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);

    SUBCASE("u = 1 keeps everything") {
        Rng rng(1);
        const AvailabilityMask m = apply_jamming(cfg, 1.0, AvailabilityMask::Pattern::Pulse, rng);
        CHECK(static_cast<int>(m.pulses.size()) == cfg.N);
        CHECK(static_cast<int>(m.observations.size()) == cfg.N * cfg.K);
    }

    SUBCASE("u out of range is rejected") {
        Rng rng(1);
        CHECK_THROWS_AS(apply_jamming(cfg, 0.0, AvailabilityMask::Pattern::Pulse, rng),
                        ConfigError);
        CHECK_THROWS_AS(apply_jamming(cfg, 1.5, AvailabilityMask::Pattern::Pulse, rng),
                        ConfigError);
    }

    SUBCASE("pulse-selective mean pulse count (binomial)") {
        Rng rng(2);
        const int trials = 10000;
        long total = 0;
        for (int t = 0; t < trials; ++t)
            total += apply_jamming(cfg, 0.4, AvailabilityMask::Pattern::Pulse, rng).pulses.size();
        const double mean = static_cast<double>(total) / trials;
        // E = 12.8, sd of the mean = sqrt(32 * .4 * .6)/sqrt(1e4) = 0.0277
        CHECK(std::abs(mean - 12.8) < 3.0 * 0.0277);
    }

    SUBCASE("pulse-selective removes whole pulses") {
        Rng rng(3);
        for (int t = 0; t < 50; ++t) {
            const AvailabilityMask m =
                apply_jamming(cfg, 0.5, AvailabilityMask::Pattern::Pulse, rng);
            std::vector<int> expect;
            for (int n : m.pulses)
                for (int k = 0; k < cfg.K; ++k) expect.push_back(n * cfg.K + k);
            CHECK(m.observations == expect);
        }
    }

    SUBCASE("observation-selective mean count (binomial)") {
        Rng rng(4);
        const int trials = 10000;
        long total = 0;
        for (int t = 0; t < trials; ++t)
            total += apply_jamming(cfg, 0.4, AvailabilityMask::Pattern::Observation, rng)
                         .observations.size();
        const double mean = static_cast<double>(total) / trials;
        // E = 25.6, sd of the mean = sqrt(64 * .4 * .6)/100 = 0.0392
        CHECK(std::abs(mean - 25.6) < 3.0 * 0.0392);
    }
}

TEST_CASE("echo debug dump carries shape and mode") {
    const RadarConfig cfg = paper_config(Mode::CAESAR);
    Rng rng(14);
    const FrequencyPlan plan = sample_frequency_plan(cfg, rng);
    Scene scene;
    scene.targets.push_back({cd{1.0, 0.0}, 0, 0, 0.0});
    Rng noise(1);
    const EchoData echo = synthesize(scene, plan, cfg, noise);
    std::ostringstream os;
    dump_echo_csv(echo, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "CAESAR,10,32,1");
    int lines = 0;
    std::string line;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == 10);
}
