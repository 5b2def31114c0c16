#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <doctest.h>

#include "aqs/errors.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace aqs;
using namespace aqs::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("aqs_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Data rows of a CSV: comment lines and the header dropped, cells split on ','.
std::vector<std::vector<std::string>> rows_of(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string error_of(const json& user, const std::string& sub = "") {
    try {
        resolve(user, sub);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal configs resolve with defaults") {
    const auto cfg = resolve(json{{"subcommand", "sweep-time"}, {"n", 10}, {"bath", "thermal"},
                                  {"eta", {0.05}}, {"omega_c", 0.25}});
    CHECK(cfg.subcommand() == "sweep-time");
    CHECK(cfg.integer("n") == 10);
    CHECK(cfg.numbers("eta") == std::vector<double>{0.05});
    CHECK(cfg.text("schedule") == "linear");
    CHECK(cfg.problem().size() == 1024.0);
    CHECK(!cfg.has("omega0"));
    CHECK(cfg.linear_time() == doctest::Approx(linear_time(make_grover(10))));
    const auto sim = resolve(json::object(), "simulate");
    CHECK(sim.has("T"));
    CHECK(sim.integrator().formulation == Formulation::MatrixRedfield);
}

TEST_CASE("validation messages name the offending key") {
    const std::string neg = error_of(json{{"eta", {-0.1}}}, "sweep-time");
    CHECK(neg.rfind("eta", 0) == 0);
    const std::string typo = error_of(json{{"omega_C", 0.3}}, "sweep-time");
    CHECK(typo.find("omega_c") != std::string::npos);
    CHECK(suggest_key("omgea_c") == "omega_c");
    CHECK(suggest_key("zzzzzzzz").empty());
    const std::string na = error_of(json{{"bath", "thermal"}, {"omega0", 0.3}}, "sweep-time");
    CHECK(na.rfind("omega0", 0) == 0);
    CHECK(error_of(json{{"bath", "thermal"}}, "sweep-detuning").rfind("bath", 0) == 0);
    CHECK(error_of(json{{"problem", "grover"}}, "two-level").rfind("problem", 0) == 0);
    CHECK(error_of(json{{"eta", {0.1, 0.2}}}, "simulate").rfind("eta", 0) == 0);
    CHECK(error_of(json{{"formulation", "closed_unitary"}, {"eta", {0.1}}}, "simulate").rfind("formulation", 0) == 0);
    CHECK(error_of(json{{"n", 31}}, "gapmap").rfind("n", 0) == 0);
    CHECK(error_of(json::object(), "").rfind("subcommand", 0) == 0);
    CHECK(error_of(json::object(), "fly").rfind("subcommand", 0) == 0);
}

TEST_CASE("config text and overrides") {
    const std::string bad = "{\n  \"n\": 10,\n  \"eta\": [0.1,,]\n}\n";
    try {
        parse_config_text(bad, "cfg.json");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).rfind("cfg.json:3:", 0) == 0);
    }
    CHECK_THROWS_AS(parse_config_text("[1, 2]", "x"), ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/aqs.json"), IoError);

    json user = json::object();
    apply_override(user, "eta=[0.01,0.1]");
    apply_override(user, "bath=structured");
    apply_override(user, "n=6");
    CHECK(user["eta"].size() == 2);
    CHECK(user["bath"] == "structured");
    CHECK(user["n"] == 6);
    CHECK_THROWS_AS(apply_override(user, "novalue"), ConfigError);
}

TEST_CASE("gapmap output and manifest round trip") {
    const fs::path a = scratch_dir("gap_a");
    const fs::path b = scratch_dir("gap_b");
    const auto cfg = resolve(json{{"bath", "structured"}, {"s_points", 11}, {"omega_points", 7},
                                  {"out", a.string()}}, "gapmap");
    const auto rep = dispatch(cfg);
    CHECK(rep.outputs.back() == (a / "manifest.json").string());
    CHECK(rows_of(a / "gapmap.csv").size() == 11 + 11 * 7);

    json again = load_config_file((a / "manifest.json").string());
    again["out"] = b.string();
    dispatch(resolve(again));
    CHECK(slurp(a / "gapmap.csv") == slurp(b / "gapmap.csv"));
}

TEST_CASE("simulate at zero coupling matches the sweep baseline") {
    const fs::path a = scratch_dir("sim");
    const fs::path b = scratch_dir("sweep");
    dispatch(resolve(json{{"n", 4}, {"T", 20.0}, {"eta", {0.0}}, {"out", a.string()}}, "simulate"));
    dispatch(resolve(json{{"n", 4}, {"t_max", 20.0}, {"t_points", 1}, {"eta", {0.05}}, {"out", b.string()}},
                     "sweep-time"));
    const auto traj = rows_of(a / "trajectory.csv");
    const auto sweep = rows_of(b / "sweep-time.csv");
    REQUIRE(!traj.empty());
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0][3] == "closed");
    // trajectory columns: t, s, alpha, p0, ...; sweep: axis, T, T/Tmax, mode, eta, delta_L, success
    CHECK(std::stod(traj.back()[3]) == std::stod(sweep[0][6]));
}

TEST_CASE("calibration reports the chosen schedule") {
    const fs::path a = scratch_dir("cal");
    const auto rep = dispatch(resolve(json{{"out", a.string()}}, "calibrate-schedule"));
    CHECK(rep.findings.at("chosen_schedule") == "linear");
    CHECK(fs::exists(a / "calibrate-schedule.csv"));
}

TEST_CASE("unwritable output directory") {
    const fs::path file = scratch_dir("blocker");
    fs::create_directories(file.parent_path());
    std::ofstream(file) << "x";
    CHECK_THROWS_AS(dispatch(resolve(json{{"out", (file / "sub").string()}}, "gapmap")), IoError);
}

}
