// config.hpp: declarative run configuration for aqs-sim
//
// A config is a flat JSON object. Every key is checked against a schema:
// unknown keys are rejected (with the nearest valid key suggested), keys that
// a subcommand does not use are rejected, and numeric fields are range
// checked. The resolved config holds every applicable key with its default
// filled in; it is what the manifest records.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aqs/bath.hpp"
#include "aqs/dynamics.hpp"
#include "aqs/experiments.hpp"
#include "aqs/problem.hpp"

namespace aqs::cli {

using json = nlohmann::ordered_json;

inline const char* const kVersion = AQS_VERSION;

const std::vector<std::string>& subcommands();

class RunConfig {
public:
    const std::string& subcommand() const { return subcommand_; }
    const json& values() const { return values_; }

    bool has(const std::string& key) const { return values_.contains(key); }
    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::string text(const std::string& key) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<std::string> texts(const std::string& key) const;

    // Typed views of the resolved values.
    AdiabaticProblem problem() const;
    ScheduleKind schedule() const;
    Bath bath(double eta) const;
    std::vector<Series> series() const;
    IntegratorConfig integrator() const;
    double linear_time() const;

    friend RunConfig resolve(json user, const std::string& subcommand);

private:
    std::string subcommand_;
    json values_;
};

// Parses JSON text; syntax errors report the line and column. A manifest
// written by aqs-sim is accepted too (its "config" member is used).
json parse_config_text(const std::string& text, const std::string& origin);
json load_config_file(const std::string& path);

// key=value; the value is read as JSON when it parses, else as a string.
void apply_override(json& user, const std::string& assignment);

// Fills defaults, checks keys, types and ranges. `subcommand` overrides the
// config's own "subcommand" key when non-empty.
RunConfig resolve(json user, const std::string& subcommand = "");

// Nearest schema key by edit distance, or "" if nothing is close.
std::string suggest_key(const std::string& key);

// One line per key for --help.
std::string schema_help();

} // namespace aqs::cli
