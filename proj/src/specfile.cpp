#include "caesar/specfile.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace caesar {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

ExperimentSpec parse_spec(std::istream& is) {
    ExperimentSpec spec;
    spec.values.clear();
    spec.modes.clear();
    spec.patterns.clear();

    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("spec line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "radar" && section != "experiment" && section != "solver")
                throw ConfigError("spec: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("spec line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("spec: key '" + key + "' appears before any section");

        try {
            if (section == "radar") {
                if (key == "fc") spec.base.fc = std::stod(value);
                else if (key == "delta_f") spec.base.delta_f = std::stod(value);
                else if (key == "M") spec.base.M = std::stoi(value);
                else if (key == "N") spec.base.N = std::stoi(value);
                else if (key == "K") spec.base.K = std::stoi(value);
                else if (key == "L") spec.base.L = std::stoi(value);
                else if (key == "d") spec.base.d = std::stod(value);
                else if (key == "theta") spec.base.theta = std::stod(value);
                else throw ConfigError("spec: unknown radar key '" + key + "'");
            } else if (section == "experiment") {
                if (key == "modes") {
                    for (const auto& m : split_list(value)) spec.modes.push_back(mode_from_string(m));
                } else if (key == "patterns") {
                    for (const auto& p : split_list(value))
                        spec.patterns.push_back(pattern_from_string(p));
                } else if (key == "sweep") {
                    spec.sweep = sweep_from_string(value);
                } else if (key == "values") {
                    for (const auto& v : split_list(value)) spec.values.push_back(std::stod(v));
                } else if (key == "S") {
                    spec.fixed_S = std::stoi(value);
                } else if (key == "u") {
                    spec.fixed_u = std::stod(value);
                } else if (key == "snr_db") {
                    if (value != "none") spec.snr_db = std::stod(value);
                } else if (key == "trials") {
                    spec.trials = std::stoi(value);
                } else if (key == "seed") {
                    spec.seed = std::stoull(value);
                } else {
                    throw ConfigError("spec: unknown experiment key '" + key + "'");
                }
            } else { // solver
                if (key == "bp_max_iters") spec.solver.bp_max_iters = std::stoi(value);
                else if (key == "bp_tol") spec.solver.bp_tol = std::stod(value);
                else if (key == "lasso_max_iters") spec.solver.lasso_max_iters = std::stoi(value);
                else if (key == "lasso_tol") spec.solver.lasso_tol = std::stod(value);
                else if (key == "lambda_scale") spec.solver.lambda_scale = std::stod(value);
                else throw ConfigError("spec: unknown solver key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::invalid_argument&) {
            throw ConfigError("spec line " + std::to_string(lineno) + ": bad value for '" + key +
                              "'");
        } catch (const std::out_of_range&) {
            throw ConfigError("spec line " + std::to_string(lineno) + ": value out of range for '" +
                              key + "'");
        }
    }

    if (spec.modes.empty())
        spec.modes = {Mode::FAR, Mode::CAESAR, Mode::WMAR};
    if (spec.patterns.empty()) spec.patterns = {AvailabilityMask::Pattern::Full};
    return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open spec file: " + path);
    return parse_spec(is);
}

} // namespace caesar
