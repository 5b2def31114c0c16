#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "aqs/csv.hpp"
#include "aqs/errors.hpp"

namespace aqs::cli {

namespace fs = std::filesystem;

namespace {

class Outputs {
public:
    explicit Outputs(const std::string& dir) : dir_(dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    }

    template <class F>
    void write(const std::string& name, F&& body) {
        const fs::path path = dir_ / name;
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
        body(os);
        os.close();
        if (!os) throw IoError("write to '" + path.string() + "' failed");
        written_.push_back(path.string());
    }

    const std::vector<std::string>& written() const { return written_; }

private:
    fs::path dir_;
    std::vector<std::string> written_;
};

// Every resolved key except those that do not affect results.
Metadata config_metadata(const RunConfig& cfg) {
    Metadata md;
    for (const auto& [key, value] : cfg.values().items()) {
        if (key == "out" || key == "jobs") continue;
        md.emplace_back("config." + key, value.is_string() ? value.get<std::string>() : value.dump());
    }
    md.emplace_back("version", kVersion);
    return md;
}

Metadata merged(Metadata head, const Metadata& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(); }

// Per series: largest and smallest success gain over the closed baseline at
// the same axis value, and how many points lie above or below it.
json sweep_findings(const SweepResult& result) {
    std::map<double, double> closed;
    for (const auto& r : result.rows) {
        if (r.mode == "closed") closed[r.axis] = r.success;
    }
    json series = json::object();
    std::size_t failures = 0, flagged = 0;
    for (const auto& r : result.rows) {
        if (!r.error.empty()) ++failures;
        if (r.diagnostics.flagged) ++flagged;
        if (r.mode == "closed" || !std::isfinite(r.success)) continue;
        const std::string key = r.mode + ":" + format_double(r.eta);
        const double gain = r.success - closed.at(r.axis);
        if (!series.contains(key)) {
            series[key] = {{"mode", r.mode}, {"eta", r.eta}, {"max_gain", gain}, {"argmax_axis", r.axis},
                           {"min_gain", gain}, {"points_above_closed", 0}, {"points_below_closed", 0}};
        }
        auto& s = series[key];
        if (gain > s["max_gain"].get<double>()) {
            s["max_gain"] = gain;
            s["argmax_axis"] = r.axis;
        }
        if (gain < s["min_gain"].get<double>()) s["min_gain"] = gain;
        if (gain > 0.0) s["points_above_closed"] = s["points_above_closed"].get<int>() + 1;
        if (gain < 0.0) s["points_below_closed"] = s["points_below_closed"].get<int>() + 1;
    }
    json out = json::object();
    out["axis"] = result.axis_name;
    out["rows"] = result.rows.size();
    out["failed_rows"] = failures;
    out["flagged_rows"] = flagged;
    out["closed_at_largest_axis"] = closed.empty() ? json() : number_or_null(closed.rbegin()->second);
    out["series"] = series;
    return out;
}

void sweep_gnuplot(std::ostream& os, const std::string& csv, const SweepResult& result, const std::string& xlabel) {
    std::vector<std::pair<std::string, double>> series;
    for (const auto& r : result.rows) {
        const std::pair<std::string, double> key{r.mode, r.eta};
        if (std::find(series.begin(), series.end(), key) == series.end()) series.push_back(key);
    }
    os << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel 'final success probability'\n"
       << "set key left top\n"
       << "plot \\\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& [mode, eta] = series[i];
        os << "  '" << csv << "' using 1:((strcol(4) eq '" << mode << "' && $5 == " << format_double(eta)
           << ") ? $7 : 1/0) with linespoints title '" << mode;
        if (mode != "closed") os << " eta=" << format_double(eta);
        os << "'" << (i + 1 < series.size() ? ", \\\n" : "\n");
    }
}

json run_simulate(const RunConfig& cfg, Outputs& out) {
    const AdiabaticProblem problem = cfg.problem();
    const ScheduleSpec schedule = make_schedule(problem, cfg.schedule(), cfg.number("T"));
    const double eta = cfg.has("eta") ? cfg.numbers("eta").front() : 0.0;
    const Bath bath = cfg.bath(eta);
    const RateMode mode = cfg.has("mode") ? rate_mode_from_string(cfg.text("mode")) : RateMode::Complex;
    IntegratorConfig ic = cfg.integrator();
    ic.record_rates = cfg.flag("dump_rates");
    Trajectory traj = integrate(problem, schedule, bath, mode, ic);
    traj.metadata = merged(config_metadata(cfg), traj.metadata);

    out.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(traj, os); });
    if (cfg.flag("dump_rates") && eta != 0.0) {
        out.write("rates.csv", [&](std::ostream& os) { write_rates_csv(traj, os); });
    }
    if (cfg.flag("dump_grid") && eta != 0.0) {
        const auto grid = build_correlation_grid(bath, schedule.T, traj.diagnostics.grid_step, ic.tail_tol,
                                                 ic.max_grid_samples);
        out.write("grid.csv", [&](std::ostream& os) { write_grid_csv(grid, os); });
    }
    if (cfg.flag("gnuplot")) {
        out.write("trajectory.gp", [](std::ostream& os) {
            os << "set datafile separator ','\n"
               << "set key autotitle columnhead\n"
               << "set xlabel 't'\n"
               << "plot 'trajectory.csv' using 1:4 with lines title 'p0', "
                  "'' using 1:7 with lines title 'rho_z', '' using 1:8 with lines title 'purity'\n";
        });
    }
    const auto& d = traj.diagnostics;
    return {{"final_success", traj.final_success()}, {"max_bloch_norm", d.max_bloch_norm},
            {"min_eigenvalue", d.min_eigenvalue},    {"flagged", d.flagged},
            {"positivity_violated", d.positivity_violated}, {"steps", d.steps}, {"h", d.step},
            {"slow_gap_ratio_max", d.slow_gap_ratio_max}};
}

json run_time_sweep(const RunConfig& cfg, Outputs& out) {
    TimeSweepSpec spec;
    spec.problem = cfg.problem();
    spec.schedule = cfg.schedule();
    spec.bath = cfg.bath(0.0);
    spec.series = cfg.series();
    spec.t_max = cfg.number("t_max");
    spec.times = geometric_grid(spec.t_max, cfg.number("t_min_fraction"), cfg.integer("t_points"));
    spec.integrator = cfg.integrator();
    spec.jobs = cfg.integer("jobs");
    SweepResult result = cfg.subcommand() == "two-level" ? two_level_run(spec) : sweep_total_time(spec);
    result.metadata = merged(config_metadata(cfg), result.metadata);

    const std::string name = cfg.subcommand() + ".csv";
    out.write(name, [&](std::ostream& os) { write_sweep_csv(result, os); });
    if (cfg.flag("gnuplot")) {
        out.write(cfg.subcommand() + ".gp", [&](std::ostream& os) { sweep_gnuplot(os, name, result, "T"); });
    }
    json f = sweep_findings(result);
    f["t_lin"] = cfg.linear_time();
    return f;
}

json run_detuning(const RunConfig& cfg, Outputs& out) {
    DetuningSweepSpec spec;
    spec.problem = cfg.problem();
    spec.schedule = cfg.schedule();
    spec.bath = std::get<StructuredBath>(cfg.bath(0.0));
    spec.series = cfg.series();
    spec.detunings = linear_grid(cfg.number("delta_L_min"), cfg.number("delta_L_max"), cfg.integer("delta_L_points"));
    spec.T = cfg.number("T");
    spec.integrator = cfg.integrator();
    spec.jobs = cfg.integer("jobs");
    SweepResult result = sweep_detuning(spec);
    result.metadata = merged(config_metadata(cfg), result.metadata);

    out.write("sweep-detuning.csv", [&](std::ostream& os) { write_sweep_csv(result, os); });
    if (cfg.flag("gnuplot")) {
        out.write("sweep-detuning.gp",
                  [&](std::ostream& os) { sweep_gnuplot(os, "sweep-detuning.csv", result, "delta_L"); });
    }
    return sweep_findings(result);
}

std::vector<double> unit_grid(int points) { return linear_grid(0.0, 1.0, points); }

json run_gapmap(const RunConfig& cfg, Outputs& out) {
    const AdiabaticProblem problem = cfg.problem();
    const Bath bath = cfg.bath(cfg.numbers("eta").front());
    const auto s_grid = unit_grid(cfg.integer("s_points"));
    const auto w_grid = linear_grid(cfg.number("omega_min"), cfg.number("omega_max"), cfg.integer("omega_points"));
    const GapMap map = gap_spectral_map(problem, bath, s_grid, w_grid);
    Metadata md = config_metadata(cfg);
    md.emplace_back("problem", problem.describe());
    for (auto& kv : describe(bath)) md.push_back(std::move(kv));
    out.write("gapmap.csv", [&](std::ostream& os) { write_gapmap_csv(map, md, os); });
    if (cfg.flag("gnuplot")) {
        out.write("gapmap.gp", [](std::ostream& os) {
            os << "set datafile separator ','\n"
               << "set xlabel 's'\n"
               << "set ylabel 'energy'\n"
               << "plot 'gapmap.csv' using 2:(strcol(1) eq 'gap' ? $3 : 1/0) with lines title 'E1-E0', "
                  "'' using 2:(strcol(1) eq 'gap' ? $4 : 1/0) with lines title 'E2-E1', "
                  "'' using 2:(strcol(1) eq 'gap' ? $5 : 1/0) with lines title 'E2-E0'\n";
        });
    }
    std::size_t imin = 0;
    for (std::size_t i = 1; i < map.gaps.size(); ++i) {
        if (map.gaps[i].e10 < map.gaps[imin].e10) imin = i;
    }
    return {{"gap_rows", map.gaps.size()},
            {"spectrum_rows", map.background.size()},
            {"rows", map.gaps.size() + map.background.size()},
            {"min_gap", map.gaps[imin].e10},
            {"s_at_min_gap", map.gaps[imin].s},
            {"J_at_min_gap", spectral_density(bath, map.gaps[imin].e10)}};
}

json run_golden_rule(const RunConfig& cfg, Outputs& out) {
    const AdiabaticProblem problem = cfg.problem();
    const Bath bath = cfg.bath(cfg.numbers("eta").front());
    const auto rows = golden_rule_profile(problem, bath, unit_grid(cfg.integer("s_points")));
    Metadata md = config_metadata(cfg);
    md.emplace_back("problem", problem.describe());
    for (auto& kv : describe(bath)) md.push_back(std::move(kv));
    out.write("golden-rule.csv", [&](std::ostream& os) { write_golden_rule_csv(rows, md, os); });
    if (cfg.flag("gnuplot")) {
        out.write("golden-rule.gp", [](std::ostream& os) {
            os << "set datafile separator ','\n"
               << "set key autotitle columnhead\n"
               << "set xlabel 's'\n"
               << "set ylabel 'J(omega_ij)'\n"
               << "plot 'golden-rule.csv' using 1:5 with lines title 'J01', '' using 1:6 with lines title 'J12', "
                  "'' using 1:7 with lines title 'J02'\n";
        });
    }
    double jmin = std::numeric_limits<double>::infinity(), jmax = 0.0;
    for (const auto& r : rows) {
        jmin = std::min(jmin, r.J01);
        jmax = std::max(jmax, r.J01);
    }
    return {{"rows", rows.size()}, {"min_J01", jmin}, {"max_J01", jmax}};
}

json run_calibrate(const RunConfig& cfg, Outputs& out) {
    const AdiabaticProblem problem = cfg.problem();
    const CalibrationResult c =
        calibrate_schedule(problem, cfg.number("target"), cfg.number("tolerance"), cfg.number("T"), cfg.integrator());
    Metadata md = config_metadata(cfg);
    md.emplace_back("problem", problem.describe());
    out.write("calibrate-schedule.csv", [&](std::ostream& os) {
        CsvWriter w(os);
        w.metadata(md);
        w.header({"schedule", "T", "success", "distance_to_target", "chosen"});
        for (ScheduleKind k : {ScheduleKind::Linear, ScheduleKind::Optimal}) {
            const double p = k == ScheduleKind::Linear ? c.linear_success : c.optimal_success;
            w << to_string(k) << c.T << p << std::abs(p - c.target) << (c.chosen && *c.chosen == k);
            w.end_row();
        }
    });
    return {{"T", c.T},
            {"target", c.target},
            {"tolerance", c.tolerance},
            {"linear_success", c.linear_success},
            {"optimal_success", c.optimal_success},
            {"chosen_schedule", c.chosen ? json(to_string(*c.chosen)) : json()}};
}

} // namespace

RunReport dispatch(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Outputs out(cfg.text("out"));
    RunReport report;
    const std::string& sub = cfg.subcommand();
    if (sub == "simulate") {
        report.findings = run_simulate(cfg, out);
    } else if (sub == "sweep-time" || sub == "two-level") {
        report.findings = run_time_sweep(cfg, out);
    } else if (sub == "sweep-detuning") {
        report.findings = run_detuning(cfg, out);
    } else if (sub == "gapmap") {
        report.findings = run_gapmap(cfg, out);
    } else if (sub == "golden-rule") {
        report.findings = run_golden_rule(cfg, out);
    } else if (sub == "calibrate-schedule") {
        report.findings = run_calibrate(cfg, out);
    } else {
        throw ConfigError("subcommand: unknown '" + sub + "'");
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json manifest = json::object();
    manifest["version"] = kVersion;
    manifest["subcommand"] = sub;
    manifest["config"] = cfg.values();
    manifest["wall_time_s"] = report.wall_time;
    json files = json::array();
    for (const auto& p : out.written()) files.push_back(fs::path(p).filename().string());
    manifest["outputs"] = files;
    manifest["findings"] = report.findings;
    out.write("manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
    report.outputs = out.written();
    return report;
}

} // namespace aqs::cli
