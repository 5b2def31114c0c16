// commands.hpp: runs a resolved config and writes its outputs

#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace aqs::cli {

struct RunReport {
    std::vector<std::string> outputs; // paths written, manifest last
    json findings;
    double wall_time{0.0};
};

// Writes the subcommand's CSV (plus optional extras) and manifest.json into
// the configured output directory. Throws ConfigError, NumericalError or IoError.
RunReport dispatch(const RunConfig& config);

} // namespace aqs::cli
