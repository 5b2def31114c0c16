#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aqs/bath.hpp"
#include "aqs/dynamics.hpp"
#include "aqs/errors.hpp"
#include "aqs/experiments.hpp"
#include "aqs/problem.hpp"
#include "aqs/rates.hpp"

namespace py = pybind11;
using namespace aqs;

namespace {

py::array_t<double> column(const Trajectory& tr, double (*get)(const TrajectorySample&)) {
    py::array_t<double> out(static_cast<py::ssize_t>(tr.samples.size()));
    auto v = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < tr.samples.size(); ++i) v(static_cast<py::ssize_t>(i)) = get(tr.samples[i]);
    return out;
}

py::dict diagnostics_dict(const RunDiagnostics& d) {
    py::dict out;
    out["h"] = d.step;
    out["steps"] = d.steps;
    out["grid_step"] = d.grid_step;
    out["tau_c"] = d.tau_c;
    out["max_bloch_norm"] = d.max_bloch_norm;
    out["min_eigenvalue"] = d.min_eigenvalue;
    out["positivity_violated"] = d.positivity_violated;
    out["flagged"] = d.flagged;
    out["slow_gap_ratio_max"] = d.slow_gap_ratio_max;
    return out;
}

py::dict trajectory_dict(const Trajectory& tr) {
    py::dict out;
    out["t"] = column(tr, [](const TrajectorySample& s) { return s.t; });
    out["s"] = column(tr, [](const TrajectorySample& s) { return s.frame.s; });
    out["alpha"] = column(tr, [](const TrajectorySample& s) { return s.frame.alpha; });
    out["p0"] = column(tr, [](const TrajectorySample& s) { return s.state.p0; });
    out["rho_x"] = column(tr, [](const TrajectorySample& s) { return s.state.bloch().x; });
    out["rho_y"] = column(tr, [](const TrajectorySample& s) { return s.state.bloch().y; });
    out["rho_z"] = column(tr, [](const TrajectorySample& s) { return s.state.bloch().z; });
    out["purity"] = column(tr, [](const TrajectorySample& s) { return s.state.purity(); });
    out["final_success"] = tr.final_success();
    out["diagnostics"] = diagnostics_dict(tr.diagnostics);
    py::dict md;
    for (const auto& [k, v] : tr.metadata) md[py::str(k)] = v;
    out["metadata"] = md;
    return out;
}

IntegratorConfig make_config(const std::string& formulation, double h, int samples, int refine) {
    IntegratorConfig c;
    c.formulation = formulation_from_string(formulation);
    c.h = h;
    c.samples = samples;
    c.refine = refine;
    return c;
}

std::vector<Series> to_series(const std::vector<std::pair<std::string, double>>& series) {
    std::vector<Series> out;
    for (const auto& [mode, eta] : series) out.push_back({rate_mode_from_string(mode), eta});
    return out;
}

py::list rows_list(const SweepResult& r) {
    py::list out;
    for (const auto& row : r.rows) {
        py::dict d;
        d[py::str(r.axis_name)] = row.axis;
        d["T"] = row.T;
        d["mode"] = row.mode;
        d["eta"] = row.eta;
        d["delta_L"] = row.deltaL;
        d["success"] = row.success;
        d["error"] = row.error;
        d["diagnostics"] = diagnostics_dict(row.diagnostics);
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bloch-Redfield dynamics of two-level adiabatic search";

    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", config_error.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<AdiabaticProblem>(m, "Problem")
        .def_property_readonly("size", &AdiabaticProblem::size)
        .def_property_readonly("qubits", &AdiabaticProblem::qubits)
        .def("delta", &AdiabaticProblem::delta)
        .def("omega", &AdiabaticProblem::omega)
        .def("gap", &AdiabaticProblem::gap)
        .def("__repr__", &AdiabaticProblem::describe);
    m.def("make_grover", &make_grover, py::arg("n"));
    m.def("make_single_site", &make_single_site, py::arg("a0"));
    m.def("linear_time", &linear_time, py::arg("problem"));

    py::class_<ScheduleSpec>(m, "Schedule")
        .def_readonly("T", &ScheduleSpec::T)
        .def_readonly("epsilon", &ScheduleSpec::epsilon)
        .def_property_readonly("kind", [](const ScheduleSpec& s) { return to_string(s.kind); });
    m.def(
        "make_schedule",
        [](const AdiabaticProblem& p, const std::string& kind, double T) {
            return make_schedule(p, schedule_kind_from_string(kind), T);
        },
        py::arg("problem"), py::arg("kind"), py::arg("T"));
    m.def("schedule_s", &schedule_s, py::arg("t"), py::arg("schedule"), py::arg("problem"));
    m.def("schedule_sdot", &schedule_sdot, py::arg("t"), py::arg("schedule"), py::arg("problem"));

    py::class_<OhmicBath>(m, "OhmicBath")
        .def(py::init([](double eta, double s_exp, double omega_c, double beta) {
                 return OhmicBath{eta, s_exp, omega_c, beta};
             }),
             py::arg("eta") = 0.0, py::arg("s_exp") = 1.0, py::arg("omega_c") = 0.25,
             py::arg("beta") = std::numeric_limits<double>::infinity())
        .def_readwrite("eta", &OhmicBath::eta)
        .def_readwrite("s_exp", &OhmicBath::s_exp)
        .def_readwrite("omega_c", &OhmicBath::omega_c)
        .def_readwrite("beta", &OhmicBath::beta);
    py::class_<StructuredBath>(m, "StructuredBath")
        .def(py::init([](double eta, double omega0, double delta_L, int phase_sign) {
                 return StructuredBath{eta, omega0, delta_L, phase_sign};
             }),
             py::arg("eta") = 0.0, py::arg("omega0") = 0.25, py::arg("delta_L") = 0.2, py::arg("phase_sign") = 1)
        .def_readwrite("eta", &StructuredBath::eta)
        .def_readwrite("omega0", &StructuredBath::omega0)
        .def_readwrite("delta_L", &StructuredBath::deltaL)
        .def_readwrite("phase_sign", &StructuredBath::phase_sign);

    m.def("correlation", &correlation, py::arg("bath"), py::arg("t"));
    m.def("spectral_density", &spectral_density, py::arg("bath"), py::arg("omega"));
    m.def(
        "rates",
        [](const Bath& bath, double t, double alpha, const std::string& mode) {
            const auto r = rates_adaptive(bath, t, alpha, rate_mode_from_string(mode));
            py::dict d;
            d["g00"] = r.g00;
            d["g01"] = r.g01;
            d["g10"] = r.g10;
            return d;
        },
        py::arg("bath"), py::arg("t"), py::arg("alpha"), py::arg("mode") = "complex");

    m.def(
        "integrate",
        [](const AdiabaticProblem& p, double T, const std::string& schedule, const Bath& bath,
           const std::string& mode, const std::string& formulation, double h, int samples, int refine) {
            const auto sp = make_schedule(p, schedule_kind_from_string(schedule), T);
            const auto cfg = make_config(formulation, h, samples, refine);
            Trajectory tr;
            {
                py::gil_scoped_release release;
                tr = integrate(p, sp, bath, rate_mode_from_string(mode), cfg);
            }
            return trajectory_dict(tr);
        },
        py::arg("problem"), py::arg("T"), py::arg("schedule") = "linear", py::arg("bath") = Bath{OhmicBath{}},
        py::arg("mode") = "complex", py::arg("formulation") = "matrix", py::arg("h") = 0.0,
        py::arg("samples") = 201, py::arg("refine") = 1);

    m.def(
        "sweep_total_time",
        [](const AdiabaticProblem& p, std::vector<double> times, const Bath& bath,
           const std::vector<std::pair<std::string, double>>& series, const std::string& schedule, int jobs) {
            TimeSweepSpec spec;
            spec.problem = p;
            spec.schedule = schedule_kind_from_string(schedule);
            spec.bath = bath;
            spec.series = to_series(series);
            spec.times = std::move(times);
            spec.jobs = jobs;
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = sweep_total_time(spec);
            }
            return rows_list(r);
        },
        py::arg("problem"), py::arg("times"), py::arg("bath"), py::arg("series"), py::arg("schedule") = "linear",
        py::arg("jobs") = 1);

    m.def(
        "sweep_detuning",
        [](const AdiabaticProblem& p, std::vector<double> detunings, const StructuredBath& bath,
           const std::vector<std::pair<std::string, double>>& series, double T, const std::string& schedule,
           int jobs) {
            DetuningSweepSpec spec;
            spec.problem = p;
            spec.schedule = schedule_kind_from_string(schedule);
            spec.bath = bath;
            spec.series = to_series(series);
            spec.detunings = std::move(detunings);
            spec.T = T;
            spec.jobs = jobs;
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = sweep_detuning(spec);
            }
            return rows_list(r);
        },
        py::arg("problem"), py::arg("detunings"), py::arg("bath"), py::arg("series"), py::arg("T"),
        py::arg("schedule") = "linear", py::arg("jobs") = 1);

    m.def(
        "calibrate_schedule",
        [](const AdiabaticProblem& p, double target, double tolerance, double T) {
            const auto c = calibrate_schedule(p, target, tolerance, T);
            py::dict d;
            d["T"] = c.T;
            d["linear_success"] = c.linear_success;
            d["optimal_success"] = c.optimal_success;
            d["chosen"] = c.chosen ? py::object(py::str(to_string(*c.chosen))) : py::object(py::none());
            return d;
        },
        py::arg("problem"), py::arg("target") = 0.55, py::arg("tolerance") = 0.10, py::arg("T") = 0.0);

    m.def(
        "gap_table",
        [](const AdiabaticProblem& p, const std::vector<double>& s_grid) {
            const auto map = gap_spectral_map(p, OhmicBath{}, s_grid, {0.0});
            py::array_t<double> out({static_cast<py::ssize_t>(map.gaps.size()), py::ssize_t{4}});
            auto v = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < map.gaps.size(); ++i) {
                const auto& g = map.gaps[i];
                const auto r = static_cast<py::ssize_t>(i);
                v(r, 0) = g.s;
                v(r, 1) = g.e10;
                v(r, 2) = g.e21;
                v(r, 3) = g.e20;
            }
            return out;
        },
        py::arg("problem"), py::arg("s_grid"));
}
