#include "caesar/experiment.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace caesar {

std::string to_string(Sweep s) {
    switch (s) {
        case Sweep::S: return "S";
        case Sweep::U: return "u";
        case Sweep::SNR: return "SNR";
    }
    return "?";
}

Sweep sweep_from_string(const std::string& s) {
    if (s == "S") return Sweep::S;
    if (s == "u") return Sweep::U;
    if (s == "SNR") return Sweep::SNR;
    throw ConfigError("unknown sweep variable: " + s);
}

std::string to_string(AvailabilityMask::Pattern p) {
    switch (p) {
        case AvailabilityMask::Pattern::Full: return "none";
        case AvailabilityMask::Pattern::Pulse: return "pulse";
        case AvailabilityMask::Pattern::Observation: return "observation";
    }
    return "?";
}

AvailabilityMask::Pattern pattern_from_string(const std::string& s) {
    if (s == "none") return AvailabilityMask::Pattern::Full;
    if (s == "pulse") return AvailabilityMask::Pattern::Pulse;
    if (s == "observation") return AvailabilityMask::Pattern::Observation;
    throw ConfigError("unknown jamming pattern: " + s);
}

std::string ResultRow::label() const {
    std::string name = to_string(mode);
    if (pattern == AvailabilityMask::Pattern::Pulse) name += "1";
    else if (pattern == AvailabilityMask::Pattern::Observation) name += "2";
    return name;
}

void ExperimentSpec::validate() const {
    base.validate();
    if (values.empty()) throw ConfigError("experiment: sweep values must be nonempty");
    if (trials < 1) throw ConfigError("experiment: trials must be >= 1");
    if (modes.empty()) throw ConfigError("experiment: modes must be nonempty");
    if (patterns.empty()) throw ConfigError("experiment: patterns must be nonempty");
    for (const Mode m : modes) {
        RadarConfig cfg = base;
        cfg.mode = m;
        if (m == Mode::FAR) cfg.K = 1;
        cfg.validate();
    }
    if (sweep == Sweep::S) {
        for (double v : values)
            if (v < 1 || v != std::floor(v)) throw ConfigError("experiment: S values must be positive integers");
    }
    if (sweep == Sweep::U) {
        for (double v : values)
            if (!(v > 0.0 && v <= 1.0)) throw ConfigError("experiment: u values must be in (0,1]");
        for (const auto p : patterns)
            if (p == AvailabilityMask::Pattern::Full)
                throw ConfigError("experiment: u sweep requires a jamming pattern");
    }
}

namespace {

struct TrialOutcome {
    double hit_fraction = 0.0;
    bool failed = false;
    std::vector<double> sq_errors; // per correctly recovered cell
};

RadarConfig config_for(const ExperimentSpec& spec, Mode mode, double sweep_value) {
    RadarConfig cfg = spec.base;
    cfg.mode = mode;
    if (mode == Mode::FAR) cfg.K = 1;
    if (spec.sweep == Sweep::SNR) {
        cfg.kappa2 = std::pow(10.0, -sweep_value / 10.0); // SNR = 1/kappa^2
    } else if (spec.snr_db.has_value()) {
        cfg.kappa2 = std::pow(10.0, -*spec.snr_db / 10.0);
    } else {
        cfg.kappa2 = 0.0;
    }
    return cfg;
}

TrialOutcome run_trial(const RadarConfig& cfg, int S, double u,
                       AvailabilityMask::Pattern pattern, const SolverOptions& solver,
                       uint64_t trial_seed) {
    TrialOutcome out;
    Rng plan_rng(trial_seed, 0);
    Rng scene_rng(trial_seed, 1);
    Rng noise_rng(trial_seed, 2);
    Rng mask_rng(trial_seed, 3);

    const FrequencyPlan plan = sample_frequency_plan(cfg, plan_rng);
    const Scene scene = sample_scene(cfg, S, scene_rng);
    const EchoData echo = synthesize(scene, plan, cfg, noise_rng);
    const AvailabilityMask mask = (pattern == AvailabilityMask::Pattern::Full)
                                      ? full_mask(cfg.N, cfg.K)
                                      : apply_jamming(cfg, u, pattern, mask_rng);

    try {
        const BeamformedData bf = beamform(echo, plan, cfg);
        const SensingMatrix sm = build_sensing_matrix(plan, cfg, ZetaMode::Exact);
        const RestrictedProblem rp = restrict_problem(bf, sm, mask);

        CVec beta;
        if (cfg.kappa2 == 0.0) {
            beta = basis_pursuit(rp.z, rp.Phi, solver);
        } else {
            const double lambda = solver.lambda_scale * norm_inf(matvec_adj(rp.Phi, rp.z));
            beta = lasso(rp.z, rp.Phi, lambda, solver);
        }
        const std::vector<int> support = extract_support(beta, S);

        std::set<int> hit_cells;
        for (const Target& t : scene.targets) {
            const int cell = Scene::cell_index(t.m_idx, t.n_idx, cfg.N);
            if (std::find(support.begin(), support.end(), cell) != support.end())
                hit_cells.insert(cell);
        }
        out.hit_fraction = static_cast<double>(hit_cells.size()) / scene.targets.size();

        if (!hit_cells.empty() && static_cast<int>(support.size()) < cfg.N) {
            const auto isolated = isolate_echoes(echo, support, plan, cfg);
            for (const IsolatedEcho& iso : isolated) {
                if (!hit_cells.count(iso.s)) continue;
                const AngleEstimate est = matched_filter_angle(iso, plan, cfg);
                for (const Target& t : scene.targets) {
                    if (Scene::cell_index(t.m_idx, t.n_idx, cfg.N) == iso.s) {
                        const double err = t.angle - est.theta_hat;
                        out.sq_errors.push_back(err * err);
                        break;
                    }
                }
            }
        }
    } catch (const SolverFailure&) {
        out = TrialOutcome{};
        out.failed = true;
    } catch (const IsolationFailure&) {
        out = TrialOutcome{};
        out.failed = true;
    } catch (const UndefinedMetric&) {
        out = TrialOutcome{};
        out.failed = true;
    } catch (const ConfigError&) {
        // e.g. an all-jammed CPI leaving an empty mask
        out = TrialOutcome{};
        out.failed = true;
    }
    return out;
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<ResultRow> rows;
    for (const Mode mode : spec.modes) {
        for (const auto pattern : spec.patterns) {
            for (const double value : spec.values) {
                const auto t0 = std::chrono::steady_clock::now();
                const RadarConfig cfg = config_for(spec, mode, value);
                const int S = (spec.sweep == Sweep::S) ? static_cast<int>(value) : spec.fixed_S;
                const double u = (spec.sweep == Sweep::U) ? value : spec.fixed_u;

                ResultRow row;
                row.mode = mode;
                row.pattern = pattern;
                row.sweep_name = to_string(spec.sweep);
                row.sweep_value = value;
                row.trials = spec.trials;

                std::vector<double> fractions(spec.trials, 0.0);
                double sq_sum = 0.0;
                long sq_count = 0;
                for (int i = 0; i < spec.trials; ++i) {
                    const TrialOutcome out = run_trial(cfg, S, u, pattern, spec.solver,
                                                       spec.seed ^ static_cast<uint64_t>(i));
                    fractions[i] = out.hit_fraction;
                    if (out.failed) ++row.failures;
                    for (double e : out.sq_errors) {
                        sq_sum += e;
                        ++sq_count;
                    }
                }
                double mean = 0.0;
                for (double f : fractions) mean += f;
                mean /= spec.trials;
                double var = 0.0;
                for (double f : fractions) var += (f - mean) * (f - mean);
                row.hit_rate = mean;
                row.hit_se = spec.trials > 1
                                 ? std::sqrt(var / (static_cast<double>(spec.trials) *
                                                    (spec.trials - 1)))
                                 : 0.0;
                if (sq_count > 0) row.rmse_rad = std::sqrt(sq_sum / sq_count);
                row.wall_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    os << "mode,pattern,sweep_name,sweep_value,hit_rate,hit_se,rmse_rad,trials,failures\n";
    for (const ResultRow& r : rows) {
        os << to_string(r.mode) << "," << to_string(r.pattern) << "," << r.sweep_name << ","
           << format_double("%.6g", r.sweep_value) << "," << format_double("%.4f", r.hit_rate)
           << "," << format_double("%.4f", r.hit_se) << ",";
        if (r.rmse_rad.has_value()) os << format_double("%.6e", *r.rmse_rad);
        os << "," << r.trials << "," << r.failures << "\n";
    }
}

std::vector<ResultRow> parse_csv(std::istream& is) {
    std::vector<ResultRow> rows;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("parse_csv: missing header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 9) throw ConfigError("parse_csv: malformed row: " + line);
        ResultRow r;
        r.mode = mode_from_string(fields[0]);
        r.pattern = pattern_from_string(fields[1]);
        r.sweep_name = fields[2];
        r.sweep_value = std::stod(fields[3]);
        r.hit_rate = std::stod(fields[4]);
        r.hit_se = std::stod(fields[5]);
        if (!fields[6].empty()) r.rmse_rad = std::stod(fields[6]);
        r.trials = std::stoi(fields[7]);
        r.failures = std::stoi(fields[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& os) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        nlohmann::json o;
        o["mode"] = to_string(r.mode);
        o["pattern"] = to_string(r.pattern);
        o["sweep_name"] = r.sweep_name;
        o["sweep_value"] = r.sweep_value;
        o["hit_rate"] = r.hit_rate;
        o["hit_se"] = r.hit_se;
        if (r.rmse_rad.has_value()) o["rmse_rad"] = *r.rmse_rad;
        else o["rmse_rad"] = nullptr;
        o["trials"] = r.trials;
        o["failures"] = r.failures;
        arr.push_back(std::move(o));
    }
    os << arr.dump(2) << "\n";
}

std::vector<ResultRow> parse_json(std::istream& is) {
    nlohmann::json arr = nlohmann::json::parse(is);
    std::vector<ResultRow> rows;
    for (const auto& o : arr) {
        ResultRow r;
        r.mode = mode_from_string(o.at("mode").get<std::string>());
        r.pattern = pattern_from_string(o.at("pattern").get<std::string>());
        r.sweep_name = o.at("sweep_name").get<std::string>();
        r.sweep_value = o.at("sweep_value").get<double>();
        r.hit_rate = o.at("hit_rate").get<double>();
        r.hit_se = o.at("hit_se").get<double>();
        if (!o.at("rmse_rad").is_null()) r.rmse_rad = o.at("rmse_rad").get<double>();
        r.trials = o.at("trials").get<int>();
        r.failures = o.at("failures").get<int>();
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_plot_data(const std::vector<ResultRow>& rows, std::ostream& os) {
    std::vector<std::string> labels;
    std::vector<double> xs;
    std::map<std::pair<std::string, double>, double> table;
    for (const ResultRow& r : rows) {
        if (std::find(labels.begin(), labels.end(), r.label()) == labels.end())
            labels.push_back(r.label());
        if (std::find(xs.begin(), xs.end(), r.sweep_value) == xs.end())
            xs.push_back(r.sweep_value);
        table[{r.label(), r.sweep_value}] = r.hit_rate;
    }
    std::sort(xs.begin(), xs.end());
    os << (rows.empty() ? "x" : rows.front().sweep_name);
    for (const auto& l : labels) os << "," << l;
    os << "\n";
    for (double x : xs) {
        os << format_double("%.6g", x);
        for (const auto& l : labels) {
            os << ",";
            const auto it = table.find({l, x});
            if (it != table.end()) os << format_double("%.4f", it->second);
        }
        os << "\n";
    }
}

std::vector<std::string> emit_results(const std::vector<ResultRow>& rows,
                                      const std::string& prefix, const std::string& format) {
    if (rows.empty()) throw ConfigError("emit_results: no rows to write");
    if (format != "csv" && format != "json" && format != "both")
        throw ConfigError("emit_results: format must be csv, json, or both");
    std::vector<std::string> written;
    auto write_file = [&](const std::string& path, auto writer) {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot write " + path);
        writer(os);
        written.push_back(path);
    };
    if (format == "csv" || format == "both")
        write_file(prefix + ".csv", [&](std::ostream& os) { emit_csv(rows, os); });
    if (format == "json" || format == "both")
        write_file(prefix + ".json", [&](std::ostream& os) { emit_json(rows, os); });
    write_file(prefix + ".plot.csv", [&](std::ostream& os) { emit_plot_data(rows, os); });
    return written;
}

} // namespace caesar
