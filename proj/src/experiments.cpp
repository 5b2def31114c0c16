#include "aqs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "aqs/errors.hpp"

namespace aqs {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_increasing(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw ConfigError(std::string(name) + ": grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw ConfigError(std::string(name) + ": non-finite grid value");
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ConfigError(std::string(name) + ": grid must be strictly increasing");
        }
    }
}

void check_series(const std::vector<Series>& series) {
    for (const auto& s : series) {
        if (!(s.eta >= 0.0) || !std::isfinite(s.eta)) throw ConfigError("eta: coupling must be finite and >= 0");
    }
}

// Runs tasks[i] for all i on `jobs` threads. Each task writes only its own
// slot, so the result does not depend on scheduling.
void run_pool(std::vector<std::function<void()>>& tasks, int jobs) {
    std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, tasks.size());
    if (workers <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) return;
            try {
                tasks[i]();
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

// Closed or open run; numerical failures are recorded in the row.
void fill_row(SweepRow& row, const AdiabaticProblem& problem, ScheduleKind kind, const Bath& bath,
              RateMode mode, const IntegratorConfig& cfg) {
    try {
        const ScheduleSpec schedule = make_schedule(problem, kind, row.T);
        const Trajectory traj = integrate(problem, schedule, bath, mode, cfg);
        row.success = traj.final_success();
        row.diagnostics = traj.diagnostics;
    } catch (const NumericalError& e) {
        row.success = kNaN;
        row.error = e.what();
    }
}

void describe_integrator(Metadata& md, const IntegratorConfig& cfg) {
    md.emplace_back("formulation", to_string(cfg.formulation));
    md.emplace_back("h", cfg.h > 0.0 ? format_double(cfg.h) : "auto");
    md.emplace_back("refine", std::to_string(cfg.refine));
    md.emplace_back("grid_step", cfg.grid_step > 0.0 ? format_double(cfg.grid_step) : "auto");
    md.emplace_back("tail_tol", format_double(cfg.tail_tol));
    md.emplace_back("samples", std::to_string(cfg.samples));
    md.emplace_back("tol_pos", format_double(cfg.tol_pos));
    md.emplace_back("flag_threshold", format_double(cfg.flag_threshold));
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_double(v[i]);
    }
    return out;
}

std::string describe_series(const std::vector<Series>& series) {
    std::string out = "closed:0";
    for (const auto& s : series) out += ' ' + to_string(s.mode) + ':' + format_double(s.eta);
    return out;
}

double detuning_of(const Bath& bath) {
    if (const auto* sb = std::get_if<StructuredBath>(&bath)) return sb->deltaL;
    return kNaN;
}

} // namespace

double linear_time(const AdiabaticProblem& problem) {
    return 4.0 * problem.size() / std::numbers::pi;
}

std::vector<double> geometric_grid(double t_max, double min_fraction, int points) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max: must be positive and finite");
    if (!(min_fraction > 0.0 && min_fraction <= 1.0)) throw ConfigError("t_min_fraction: must lie in (0, 1]");
    if (points < 1) throw ConfigError("t_points: need at least one point");
    if (points == 1) return {t_max};
    if (min_fraction == 1.0) throw ConfigError("t_min_fraction: must be < 1 for more than one point");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double span = std::log(min_fraction);
    for (int i = 0; i < points; ++i) {
        const double u = static_cast<double>(points - 1 - i) / static_cast<double>(points - 1);
        grid[static_cast<std::size_t>(i)] = t_max * std::exp(span * u);
    }
    grid.back() = t_max;
    return grid;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 1) throw ConfigError("points: need at least one point");
    if (points == 1) return {lo};
    if (!(hi > lo)) throw ConfigError("grid: upper end must exceed lower end");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    grid.back() = hi;
    return grid;
}

std::vector<const SweepRow*> SweepResult::series(const std::string& mode, double eta) const {
    std::vector<const SweepRow*> out;
    for (const auto& r : rows) {
        if (r.mode == mode && (mode == "closed" || r.eta == eta)) out.push_back(&r);
    }
    return out;
}

SweepResult sweep_total_time(const TimeSweepSpec& spec) {
    check_increasing(spec.times, "times");
    check_series(spec.series);
    if (!(spec.times.front() > 0.0)) throw ConfigError("times: total times must be positive");
    const double t_max = spec.t_max > 0.0 ? spec.t_max : spec.times.back();

    const std::size_t per_point = spec.series.size() + 1;
    SweepResult out;
    out.axis_name = "T";
    out.rows.resize(spec.times.size() * per_point);
    std::vector<std::function<void()>> tasks;
    for (std::size_t i = 0; i < spec.times.size(); ++i) {
        for (std::size_t j = 0; j < per_point; ++j) {
            SweepRow& row = out.rows[i * per_point + j];
            row.axis = spec.times[i];
            row.T = spec.times[i];
            row.t_over_tmax = row.T / t_max;
            row.deltaL = detuning_of(spec.bath);
            if (j == 0) {
                row.mode = "closed";
                row.eta = 0.0;
                tasks.emplace_back([&spec, &row] {
                    fill_row(row, spec.problem, spec.schedule, with_coupling(spec.bath, 0.0), RateMode::Complex,
                             spec.integrator);
                });
            } else {
                const Series& s = spec.series[j - 1];
                row.mode = to_string(s.mode);
                row.eta = s.eta;
                tasks.emplace_back([&spec, &row, s] {
                    fill_row(row, spec.problem, spec.schedule, with_coupling(spec.bath, s.eta), s.mode,
                             spec.integrator);
                });
            }
        }
    }
    run_pool(tasks, spec.jobs);

    auto& md = out.metadata;
    md.emplace_back("sweep", "total_time");
    md.emplace_back("problem", spec.problem.describe());
    md.emplace_back("schedule", to_string(spec.schedule));
    for (auto& kv : describe(with_coupling(spec.bath, 0.0))) {
        if (kv.first != "eta") md.push_back(std::move(kv));
    }
    md.emplace_back("series", describe_series(spec.series));
    md.emplace_back("t_max", format_double(t_max));
    md.emplace_back("times", join(spec.times));
    describe_integrator(md, spec.integrator);
    return out;
}

SweepResult sweep_detuning(const DetuningSweepSpec& spec) {
    check_increasing(spec.detunings, "detunings");
    check_series(spec.series);
    if (!(spec.T > 0.0) || !std::isfinite(spec.T)) throw ConfigError("T: must be positive and finite");

    const std::size_t per_point = spec.series.size() + 1;
    SweepResult out;
    out.axis_name = "delta_L";
    out.rows.resize(spec.detunings.size() * per_point);

    // the closed baseline does not depend on the detuning
    SweepRow closed;
    closed.T = spec.T;
    closed.t_over_tmax = 1.0;
    closed.mode = "closed";
    std::vector<std::function<void()>> tasks;
    tasks.emplace_back([&] {
        fill_row(closed, spec.problem, spec.schedule, StructuredBath{0.0, spec.bath.omega0, spec.bath.deltaL,
                                                                     spec.bath.phase_sign},
                 RateMode::Complex, spec.integrator);
    });
    for (std::size_t i = 0; i < spec.detunings.size(); ++i) {
        for (std::size_t j = 1; j < per_point; ++j) {
            SweepRow& row = out.rows[i * per_point + j];
            const Series& s = spec.series[j - 1];
            row.axis = spec.detunings[i];
            row.T = spec.T;
            row.t_over_tmax = 1.0;
            row.mode = to_string(s.mode);
            row.eta = s.eta;
            row.deltaL = spec.detunings[i];
            StructuredBath b = spec.bath;
            b.eta = s.eta;
            b.deltaL = spec.detunings[i];
            tasks.emplace_back([&spec, &row, b, s] {
                fill_row(row, spec.problem, spec.schedule, b, s.mode, spec.integrator);
            });
        }
    }
    run_pool(tasks, spec.jobs);
    for (std::size_t i = 0; i < spec.detunings.size(); ++i) {
        SweepRow& row = out.rows[i * per_point];
        row = closed;
        row.axis = spec.detunings[i];
        row.deltaL = spec.detunings[i];
    }

    auto& md = out.metadata;
    md.emplace_back("sweep", "detuning");
    md.emplace_back("problem", spec.problem.describe());
    md.emplace_back("schedule", to_string(spec.schedule));
    md.emplace_back("bath", "structured");
    md.emplace_back("omega0", format_double(spec.bath.omega0));
    md.emplace_back("phase_sign", std::to_string(spec.bath.phase_sign));
    md.emplace_back("series", describe_series(spec.series));
    md.emplace_back("T", format_double(spec.T));
    md.emplace_back("detunings", join(spec.detunings));
    describe_integrator(md, spec.integrator);
    return out;
}

SweepResult two_level_run(const TimeSweepSpec& spec) {
    if (spec.problem.kind() != ProblemKind::SingleSite) {
        throw ConfigError("problem: two-level runs need the single_site problem");
    }
    if (!std::holds_alternative<StructuredBath>(spec.bath)) {
        throw ConfigError("bath: two-level runs use the structured bath");
    }
    SweepResult out = sweep_total_time(spec);
    out.metadata.front().second = "two_level";
    return out;
}

TimeSweepSpec thermal_time_spec(RateMode mode, std::vector<double> etas) {
    TimeSweepSpec spec;
    spec.problem = make_grover(10);
    spec.bath = OhmicBath{0.0, 1.0, 0.25};
    for (double e : etas) spec.series.push_back({mode, e});
    spec.t_max = 0.8 * linear_time(spec.problem);
    spec.times = geometric_grid(spec.t_max, 0.05, 12);
    return spec;
}

TimeSweepSpec structured_time_spec(double deltaL, std::vector<double> etas) {
    TimeSweepSpec spec;
    spec.problem = make_grover(10);
    spec.bath = StructuredBath{0.0, 0.25, deltaL, +1};
    for (double e : etas) spec.series.push_back({RateMode::Complex, e});
    spec.t_max = linear_time(spec.problem);
    spec.times = geometric_grid(spec.t_max, 0.05, 12);
    return spec;
}

DetuningSweepSpec detuning_spec() {
    DetuningSweepSpec spec;
    spec.problem = make_grover(10);
    spec.bath = StructuredBath{0.0, 0.25, 0.2, +1};
    for (double e : {0.01, 0.05, 0.1, 0.4}) spec.series.push_back({RateMode::Complex, e});
    for (double e : {0.01, 0.05, 0.2}) spec.series.push_back({RateMode::RealOnly, e});
    spec.detunings = linear_grid(0.05, 0.6, 23);
    spec.T = 0.8 * linear_time(spec.problem);
    return spec;
}

TimeSweepSpec two_level_spec() {
    TimeSweepSpec spec;
    spec.problem = make_single_site(std::sqrt(0.5));
    spec.bath = StructuredBath{0.0, 0.5, 0.5, +1};
    for (double e : {0.01, 0.05, 0.2}) spec.series.push_back({RateMode::Complex, e});
    spec.t_max = 10.0;
    spec.times = geometric_grid(spec.t_max, 0.05, 12);
    return spec;
}

GapMap gap_spectral_map(const AdiabaticProblem& problem, const Bath& bath, const std::vector<double>& s_grid,
                        const std::vector<double>& omega_grid) {
    check_increasing(s_grid, "s_grid");
    check_increasing(omega_grid, "omega_grid");
    if (s_grid.front() < 0.0 || s_grid.back() > 1.0) throw ConfigError("s_grid: values must lie in [0, 1]");
    GapMap map;
    map.gaps.reserve(s_grid.size());
    map.background.reserve(s_grid.size() * omega_grid.size());
    for (double s : s_grid) {
        const double a = problem.gap(s);
        const double e0 = 0.5 - 0.5 * a;
        const double e1 = 0.5 + 0.5 * a;
        const double e2 = 1.0;
        map.gaps.push_back({s, e1 - e0, e2 - e1, e2 - e0});
    }
    // J does not depend on s; it is repeated so the table plots as an image
    for (double s : s_grid) {
        for (double w : omega_grid) map.background.push_back({s, w, spectral_density(bath, w)});
    }
    return map;
}

std::vector<GoldenRuleRow> golden_rule_profile(const AdiabaticProblem& problem, const Bath& bath,
                                               const std::vector<double>& s_grid) {
    check_increasing(s_grid, "s_grid");
    if (s_grid.front() < 0.0 || s_grid.back() > 1.0) throw ConfigError("s_grid: values must lie in [0, 1]");
    std::vector<GoldenRuleRow> rows;
    rows.reserve(s_grid.size());
    for (double s : s_grid) {
        const double a = problem.gap(s);
        GoldenRuleRow r;
        r.s = s;
        r.w01 = a;
        r.w12 = 0.5 - 0.5 * a;
        r.w02 = 0.5 + 0.5 * a;
        r.J01 = spectral_density(bath, r.w01);
        r.J12 = spectral_density(bath, r.w12);
        r.J02 = spectral_density(bath, r.w02);
        rows.push_back(r);
    }
    return rows;
}

CalibrationResult calibrate_schedule(const AdiabaticProblem& problem, double target, double tolerance, double T,
                                     const IntegratorConfig& integrator) {
    if (!(target >= 0.0 && target <= 1.0)) throw ConfigError("target: must lie in [0, 1]");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance: must be positive");
    CalibrationResult out;
    out.T = T > 0.0 ? T : linear_time(problem);
    out.target = target;
    out.tolerance = tolerance;
    IntegratorConfig cfg = integrator;
    cfg.samples = 2;
    const Bath closed = OhmicBath{};
    auto run = [&](ScheduleKind kind) {
        return integrate(problem, make_schedule(problem, kind, out.T), closed, RateMode::Complex, cfg)
            .final_success();
    };
    out.linear_success = run(ScheduleKind::Linear);
    out.optimal_success = run(ScheduleKind::Optimal);
    const double dl = std::abs(out.linear_success - target);
    const double dop = std::abs(out.optimal_success - target);
    const ScheduleKind best = dl <= dop ? ScheduleKind::Linear : ScheduleKind::Optimal;
    if (std::min(dl, dop) <= tolerance) out.chosen = best;
    return out;
}

} // namespace aqs
