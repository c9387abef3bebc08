#pragma once

#include "caesar/angle.hpp"
#include "caesar/recovery.hpp"

#include <iosfwd>
#include <optional>

namespace caesar {

enum class Sweep { S, U, SNR };

std::string to_string(Sweep s);
Sweep sweep_from_string(const std::string& s);

std::string to_string(AvailabilityMask::Pattern p);
AvailabilityMask::Pattern pattern_from_string(const std::string& s);

/// Full description of one Monte Carlo study (one figure replica).
struct ExperimentSpec {
    RadarConfig base;                                    // mode field unused
    std::vector<Mode> modes{Mode::FAR, Mode::CAESAR, Mode::WMAR};
    std::vector<AvailabilityMask::Pattern> patterns{AvailabilityMask::Pattern::Full};
    Sweep sweep = Sweep::S;
    std::vector<double> values;
    int fixed_S = 5;
    double fixed_u = 0.4;
    std::optional<double> snr_db; // absent => noiseless (basis pursuit)
    int trials = 100;
    uint64_t seed = 1;
    SolverOptions solver;

    void validate() const;
};

struct ResultRow {
    Mode mode = Mode::CAESAR;
    AvailabilityMask::Pattern pattern = AvailabilityMask::Pattern::Full;
    std::string sweep_name = "S";
    double sweep_value = 0.0;
    double hit_rate = 0.0;
    double hit_se = 0.0;
    std::optional<double> rmse_rad; // absent when no cell was ever recovered
    int trials = 0;
    int failures = 0;
    double wall_seconds = 0.0; // informational; not serialized

    /// Mode label with the paper-style pattern suffix (CAESAR1, WMAR2, ...).
    std::string label() const;
};

/// Runs every (mode, pattern, sweep value) cell: per trial sample plan and
/// scene, synthesize, mask, beamform, restrict, recover (basis pursuit when
/// noiseless, Lasso otherwise), score hits, and matched-filter the angles of
/// the correctly recovered cells. Trial i uses derived seed spec.seed ^ i,
/// identical across cells, so modes are compared on common draws. Solver or
/// isolation failures zero the trial's hits and are tallied per row.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
std::vector<ResultRow> parse_csv(std::istream& is);
void emit_json(const std::vector<ResultRow>& rows, std::ostream& os);
std::vector<ResultRow> parse_json(std::istream& is);
/// One x column plus one hit-rate column per mode/pattern label.
void emit_plot_data(const std::vector<ResultRow>& rows, std::ostream& os);

/// Writes <prefix>.csv / <prefix>.json / <prefix>.plot.csv according to
/// format ("csv", "json", or "both"). Returns the paths written.
std::vector<std::string> emit_results(const std::vector<ResultRow>& rows,
                                      const std::string& prefix, const std::string& format);

} // namespace caesar
