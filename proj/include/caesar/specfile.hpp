#pragma once

#include "caesar/experiment.hpp"

#include <iosfwd>

namespace caesar {

/// Parses the key-value experiment description (sections [radar],
/// [experiment], [solver]; '#' comments). Unknown keys are rejected so typos
/// fail loudly. See the README for the full schema.
ExperimentSpec parse_spec(std::istream& is);
ExperimentSpec parse_spec_file(const std::string& path);

} // namespace caesar
