// aqs-sim: command-line front end for the open-system adiabatic search runs.
//
//   aqs-sim sweep-time --set bath=thermal --set eta=[0.05,0.1] --out runs/fig
//   aqs-sim --config runs/fig/manifest.json      (re-run from a manifest)

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aqs/errors.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

} // namespace

int main(int argc, char** argv) {
    using namespace aqs::cli;

    CLI::App app{"Bloch-Redfield simulation of two-level adiabatic search"};
    app.footer(schema_help());
    app.set_version_flag("--version", std::string(kVersion));

    std::string subcommand;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    int jobs = -1;
    bool quiet = false;

    std::string sub_help = "one of:";
    for (const auto& s : subcommands()) sub_help += " " + s;
    app.add_option("subcommand", subcommand, sub_help);
    app.add_option("-c,--config", config_path, "JSON config file or a manifest.json from an earlier run");
    app.add_option("-s,--set", overrides, "override a config key, key=value (repeatable)");
    app.add_option("-o,--out", out_dir, "output directory (config key 'out')");
    app.add_option("-j,--jobs", jobs, "worker threads, 0 = all cores (config key 'jobs')")->check(CLI::NonNegativeNumber);
    app.add_flag("-q,--quiet", quiet, "do not print the findings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        json user = config_path.empty() ? json::object() : load_config_file(config_path);
        for (const auto& a : overrides) apply_override(user, a);
        if (!out_dir.empty()) user["out"] = out_dir;
        if (jobs >= 0) user["jobs"] = jobs;
        const RunConfig cfg = resolve(std::move(user), subcommand);
        const RunReport report = dispatch(cfg);
        if (!quiet) {
            std::cout << report.findings.dump(2) << '\n';
            for (const auto& p : report.outputs) std::cout << "wrote " << p << '\n';
        }
        return 0;
    } catch (const aqs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const aqs::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const aqs::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const aqs::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
}
