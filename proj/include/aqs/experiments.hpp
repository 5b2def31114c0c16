// experiments.hpp: parameter sweeps over total time, detuning and coupling,
// plus the closed-system gap and spectral-density tables

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aqs/bath.hpp"
#include "aqs/dynamics.hpp"
#include "aqs/problem.hpp"
#include "aqs/rates.hpp"

namespace aqs {

// T_lin = 4N/pi, the reference time scale of the sweeps.
double linear_time(const AdiabaticProblem& problem);

// `points` values from min_fraction * t_max to t_max, evenly spaced in log.
std::vector<double> geometric_grid(double t_max, double min_fraction, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

// One open-system series of a sweep: a rate mode and a coupling strength.
struct Series {
    RateMode mode{RateMode::Complex};
    double eta{0.0};
};

struct TimeSweepSpec {
    AdiabaticProblem problem = make_grover(10);
    ScheduleKind schedule{ScheduleKind::Linear};
    Bath bath = OhmicBath{};       // coupling is replaced per series
    std::vector<Series> series;
    std::vector<double> times;     // absolute total times, strictly increasing
    double t_max{0.0};             // reference for the T/T_max column
    IntegratorConfig integrator;
    int jobs{1};
};

struct DetuningSweepSpec {
    AdiabaticProblem problem = make_grover(10);
    ScheduleKind schedule{ScheduleKind::Linear};
    StructuredBath bath;
    std::vector<Series> series;
    std::vector<double> detunings; // strictly increasing
    double T{0.0};
    IntegratorConfig integrator;
    int jobs{1};
};

struct SweepRow {
    double axis{0.0};         // T for time sweeps, Delta_L for detuning sweeps
    double T{0.0};
    double t_over_tmax{0.0};
    std::string mode;         // "closed", "complex" or "real"
    double eta{0.0};
    double deltaL{0.0};       // NaN for baths without a detuning
    double success{0.0};
    RunDiagnostics diagnostics;
    std::string error;        // non-empty if the run failed numerically
};

struct SweepResult {
    std::string axis_name;
    std::vector<SweepRow> rows;
    Metadata metadata;

    // Rows of one series, in axis order.
    std::vector<const SweepRow*> series(const std::string& mode, double eta) const;
};

// For every T and every series, integrate and record the final success.
// The closed (eta = 0) baseline is always included.
SweepResult sweep_total_time(const TimeSweepSpec& spec);

// Success against the detuning of a structured bath at fixed T.
SweepResult sweep_detuning(const DetuningSweepSpec& spec);

// sweep_total_time restricted to a SingleSite problem with a structured bath.
SweepResult two_level_run(const TimeSweepSpec& spec);

// Default specs for the studies reported in the README.
TimeSweepSpec thermal_time_spec(RateMode mode, std::vector<double> etas);
TimeSweepSpec structured_time_spec(double deltaL, std::vector<double> etas);
DetuningSweepSpec detuning_spec();
TimeSweepSpec two_level_spec();

struct GapRow {
    double s{0.0};
    double e10{0.0};
    double e21{0.0};
    double e20{0.0};
};

struct SpectralCell {
    double s{0.0};
    double omega{0.0};
    double J{0.0};
};

struct GapMap {
    std::vector<GapRow> gaps;
    std::vector<SpectralCell> background; // |s-grid| x |omega-grid|, s major
};

// Energy differences of the closed system, E2 = 1 and E0,1 = 1/2 -+ alpha/2,
// and the spectral density on an (s, omega) grid for overlay plots.
GapMap gap_spectral_map(const AdiabaticProblem& problem, const Bath& bath,
                        const std::vector<double>& s_grid, const std::vector<double>& omega_grid);

// J evaluated at the three transition frequencies. The matrix elements of the
// interaction are not included, so this is only a proxy for the golden-rule rate.
struct GoldenRuleRow {
    double s{0.0};
    double w01{0.0};
    double w12{0.0};
    double w02{0.0};
    double J01{0.0};
    double J12{0.0};
    double J02{0.0};
};

std::vector<GoldenRuleRow> golden_rule_profile(const AdiabaticProblem& problem, const Bath& bath,
                                               const std::vector<double>& s_grid);

struct CalibrationResult {
    double T{0.0};
    double target{0.0};
    double tolerance{0.0};
    double linear_success{0.0};
    double optimal_success{0.0};
    std::optional<ScheduleKind> chosen; // closest to target, if within tolerance
};

// Closed runs of both schedules at T (default 4N/pi); picks the one whose
// success is closest to `target`.
CalibrationResult calibrate_schedule(const AdiabaticProblem& problem, double target = 0.55,
                                     double tolerance = 0.10, double T = 0.0,
                                     const IntegratorConfig& integrator = {});

} // namespace aqs
