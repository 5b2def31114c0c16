#include "aqs/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "aqs/errors.hpp"
#include "aqs/format.hpp"

namespace aqs {

namespace {

std::string fmt(double x) { return format_double(x); }

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

template <std::size_t N>
std::array<double, N> axpy(const std::array<double, N>& y, double a, const std::array<double, N>& x) {
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + a * x[i];
    return r;
}

} // namespace

Eigen::Matrix2cd DensityState::matrix() const {
    Eigen::Matrix2cd m;
    m << cplx{p0, 0.0}, rho01, std::conj(rho01), cplx{p1(), 0.0};
    return m;
}

BlochVector DensityState::bloch() const {
    return {2.0 * rho01.real(), -2.0 * rho01.imag(), p1() - p0};
}

double DensityState::bloch_norm() const {
    const auto b = bloch();
    return std::sqrt(b.x * b.x + b.y * b.y + b.z * b.z);
}

double DensityState::purity() const {
    const double r = bloch_norm();
    return 0.5 * (1.0 + r * r);
}

double DensityState::min_eigenvalue() const {
    return 0.5 * (1.0 - bloch_norm());
}

DensityState DensityState::from_bloch(const BlochVector& b) {
    return {0.5 * (1.0 - b.z), cplx{0.5 * b.x, -0.5 * b.y}};
}

DensityState DensityState::from_matrix(const Eigen::Matrix2cd& m) {
    // trace normalization and Hermitian part
    const double tr = (m(0, 0) + m(1, 1)).real();
    return {m(0, 0).real() / tr, 0.5 * (m(0, 1) + std::conj(m(1, 0))) / tr};
}

std::string to_string(Formulation f) {
    switch (f) {
    case Formulation::MatrixRedfield: return "matrix";
    case Formulation::Bloch: return "bloch";
    case Formulation::ClosedUnitary: return "closed_unitary";
    }
    return "?";
}

Formulation formulation_from_string(const std::string& name) {
    if (name == "matrix") return Formulation::MatrixRedfield;
    if (name == "bloch") return Formulation::Bloch;
    if (name == "closed_unitary") return Formulation::ClosedUnitary;
    throw ConfigError("formulation: expected 'matrix', 'bloch' or 'closed_unitary', got '" + name + "'");
}

double Trajectory::final_success() const {
    if (samples.empty()) throw NumericalError("empty trajectory");
    return success_probability(samples.back().state, samples.back().frame.s);
}

Eigen::Matrix2cd coupling_operator(const FrameSnapshot& f) {
    Eigen::Matrix2cd a;
    a << -f.c, -f.s_trig, -f.s_trig, f.c;
    return a;
}

StateDerivative rhs_matrix(const FrameSnapshot& f, const DensityState& state, const RateSet& rates) {
    const cplx i{0.0, 1.0};
    const Eigen::Matrix2cd rho = state.matrix();
    const Eigen::Matrix2cd a = coupling_operator(f);
    Eigen::Matrix2cd lam;
    lam << a(0, 0) * rates.g00, a(0, 1) * rates.g01, a(1, 0) * rates.g10, a(1, 1) * rates.g00;
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = -0.5 * f.alpha;
    d(1, 1) = 0.5 * f.alpha;
    Eigen::Matrix2cd w = Eigen::Matrix2cd::Zero();
    w(0, 1) = f.theta_dot;
    w(1, 0) = -f.theta_dot;

    const Eigen::Matrix2cd lr = lam * rho;
    const Eigen::Matrix2cd rl = rho * lam.adjoint();
    const Eigen::Matrix2cd out = -i * (d * rho - rho * d) - (a * lr - lr * a) + (a * rl - rl * a) +
                                 (rho * w - w * rho);
    return {out(0, 0).real(), out(0, 1)};
}

StateDerivative rhs_matrix(double t, const DensityState& state, const AdiabaticProblem& problem,
                           const ScheduleSpec& schedule, const RateSet& rates) {
    const double s = schedule_s(t, schedule, problem);
    const double sdot = schedule_sdot(t, schedule, problem);
    return rhs_matrix(frame(problem, s, sdot), state, rates);
}

BlochVector rhs_bloch(const FrameSnapshot& f, const BlochVector& r, const RateSet& g) {
    const double c = f.c;
    const double s = f.s_trig;
    const double cs = c * s;
    const double s2 = s * s;
    const double c2 = c * c;
    const double td = f.theta_dot;
    const double a = f.alpha;
    BlochVector d;
    d.x = 2.0 * cs * g.gRm() - 4.0 * c2 * g.re00() * r.x + a * r.y -
          2.0 * (cs * g.gRp() + td) * r.z;
    d.y = 2.0 * cs * (g.gIp() - 2.0 * g.im00()) + (2.0 * s2 * g.gIm() - a) * r.x -
          (4.0 * c2 * g.re00() + 2.0 * s2 * g.gRp()) * r.y - 2.0 * cs * g.gIm() * r.z;
    d.z = 2.0 * s2 * g.gRm() - 2.0 * (2.0 * cs * g.re00() - td) * r.x - 2.0 * s2 * g.gRp() * r.z;
    return d;
}

double success_probability(const DensityState& state, double s) {
    if (!(s >= 0.0 && s <= 1.0 + 1e-12)) throw DomainError("success_probability: s outside [0, 1]");
    return state.p0;
}

double default_step(double T) {
    return std::min(0.1, T / 1000.0);
}

namespace {

struct Stage {
    double t{0.0};
    FrameSnapshot frame;
    RateSet rates;
};

// Maps step/stage positions onto schedule times and cached-grid nodes. Stage
// positions are counted in half steps so every RK4 stage lands on a grid node.
class StageSource {
public:
    StageSource(const AdiabaticProblem* problem, const ScheduleSpec* schedule,
                const FrameSnapshot* frozen, const CorrelationGrid* grid, std::size_t nodes_per_half,
                RateMode mode, double T, std::size_t half_steps)
        : problem_(problem), schedule_(schedule), frozen_(frozen), grid_(grid),
          nodes_per_half_(nodes_per_half), mode_(mode), T_(T), half_steps_(half_steps) {}

    Stage at(std::size_t half) const {
        Stage st;
        st.t = half == half_steps_ ? T_ : T_ * static_cast<double>(half) / static_cast<double>(half_steps_);
        if (frozen_ != nullptr) {
            st.frame = *frozen_;
        } else {
            const double s = schedule_s(st.t, *schedule_, *problem_);
            const double sdot = schedule_sdot(st.t, *schedule_, *problem_);
            st.frame = frame(*problem_, s, sdot);
        }
        if (grid_ != nullptr) {
            st.rates = rates_at_node(*grid_, half * nodes_per_half_, st.frame.alpha, mode_);
            st.rates.t = st.t;
        } else {
            st.rates.t = st.t;
            st.rates.alpha = st.frame.alpha;
        }
        return st;
    }

private:
    const AdiabaticProblem* problem_;
    const ScheduleSpec* schedule_;
    const FrameSnapshot* frozen_;
    const CorrelationGrid* grid_;
    std::size_t nodes_per_half_;
    RateMode mode_;
    double T_;
    std::size_t half_steps_;
};

Vec3 pack(const DensityState& s) { return {s.p0, s.rho01.real(), s.rho01.imag()}; }
DensityState unpack(const Vec3& v) { return {v[0], cplx{v[1], v[2]}}; }

struct MatrixModel {
    using State = Vec3;
    static State initial(const DensityState& d, const FrameSnapshot&) { return pack(d); }
    static State deriv(const Stage& st, const State& v) {
        const auto d = rhs_matrix(st.frame, unpack(v), st.rates);
        return {d.dp0, d.drho01.real(), d.drho01.imag()};
    }
    static DensityState density(const State& v, const FrameSnapshot&) { return unpack(v); }
};

struct BlochModel {
    using State = Vec3;
    static State initial(const DensityState& d, const FrameSnapshot&) {
        const auto b = d.bloch();
        return {b.x, b.y, b.z};
    }
    static State deriv(const Stage& st, const State& v) {
        const auto d = rhs_bloch(st.frame, {v[0], v[1], v[2]}, st.rates);
        return {d.x, d.y, d.z};
    }
    static DensityState density(const State& v, const FrameSnapshot&) {
        return DensityState::from_bloch({v[0], v[1], v[2]});
    }
};

// Lab-frame amplitudes (psi_m, psi_perp) as (re, im, re, im).
struct UnitaryModel {
    using State = Vec4;
    static State initial(const DensityState& d, const FrameSnapshot& f) {
        if (std::abs(d.p0 - 1.0) > 0.0 || std::abs(d.rho01) > 0.0) {
            throw ConfigError("formulation: closed_unitary starts from the instantaneous ground state");
        }
        const double sn = std::sin(f.theta);
        const double cs = std::cos(f.theta);
        return {sn, 0.0, cs, 0.0};
    }
    static State deriv(const Stage& st, const State& v) {
        // H = 1/2 (Omega sigma_x - Delta sigma_z);  d psi/dt = -i H psi
        const cplx pm{v[0], v[1]};
        const cplx pp{v[2], v[3]};
        const double om = st.frame.omega;
        const double de = st.frame.delta;
        const cplx hm = 0.5 * (-de * pm + om * pp);
        const cplx hp = 0.5 * (om * pm + de * pp);
        const cplx i{0.0, 1.0};
        const cplx dm = -i * hm;
        const cplx dp = -i * hp;
        return {dm.real(), dm.imag(), dp.real(), dp.imag()};
    }
    static DensityState density(const State& v, const FrameSnapshot& f) {
        const cplx pm{v[0], v[1]};
        const cplx pp{v[2], v[3]};
        const double sn = std::sin(f.theta);
        const double cs = std::cos(f.theta);
        const cplx a0 = sn * pm + cs * pp;
        const cplx a1 = -cs * pm + sn * pp;
        const double norm = std::norm(a0) + std::norm(a1);
        return {std::norm(a0) / norm, a0 * std::conj(a1) / norm};
    }
};

template <class Model>
void run_rk4(const StageSource& source, std::size_t steps, std::size_t steps_per_sample,
             const DensityState& initial, const IntegratorConfig& cfg, double tau_c,
             Trajectory& traj) {
    auto& diag = traj.diagnostics;
    Stage s0 = source.at(0);
    typename Model::State y = Model::initial(initial, s0.frame);

    auto observe = [&](const Stage& st, const typename Model::State& v, bool record) {
        const DensityState d = Model::density(v, st.frame);
        const double r = d.bloch_norm();
        if (!std::isfinite(r) || !std::isfinite(d.p0)) {
            throw NumericalError("integration diverged at t=" + fmt(st.t));
        }
        diag.max_bloch_norm = std::max(diag.max_bloch_norm, r);
        diag.min_eigenvalue = std::min(diag.min_eigenvalue, d.min_eigenvalue());
        if (r > 1.0 + cfg.tol_pos) diag.positivity_violated = true;
        if (r > 1.0 + cfg.flag_threshold) diag.flagged = true;
        if (tau_c > 0.0 && st.frame.alpha > 0.0) {
            diag.slow_gap_ratio_max =
                std::max(diag.slow_gap_ratio_max, std::abs(st.frame.alpha_dot / st.frame.alpha) * tau_c);
        }
        if (record) {
            TrajectorySample smp{st.t, st.frame, d, std::nullopt};
            if (cfg.record_rates) smp.rates = st.rates;
            traj.samples.push_back(std::move(smp));
        }
    };

    diag.min_eigenvalue = initial.min_eigenvalue();
    observe(s0, y, true);
    for (std::size_t k = 0; k < steps; ++k) {
        const Stage s1 = source.at(2 * k + 1);
        Stage s2 = source.at(2 * k + 2);
        const double h = s2.t - s0.t;
        const auto k1 = Model::deriv(s0, y);
        const auto k2 = Model::deriv(s1, axpy(y, 0.5 * h, k1));
        const auto k3 = Model::deriv(s1, axpy(y, 0.5 * h, k2));
        const auto k4 = Model::deriv(s2, axpy(y, h, k3));
        for (std::size_t j = 0; j < y.size(); ++j) {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        observe(s2, y, (k + 1) % steps_per_sample == 0);
        s0 = std::move(s2);
    }
}

struct StepPlan {
    std::size_t steps{0};
    std::size_t steps_per_sample{1};
    double h{0.0};
};

StepPlan plan_steps(double T, double h_max, int samples, int refine) {
    if (samples < 2) throw ConfigError("samples: need at least 2 trajectory samples");
    if (refine < 1) throw ConfigError("refine: must be >= 1");
    const auto intervals = static_cast<std::size_t>(samples - 1);
    const double raw = std::ceil(T / h_max * (1.0 - 1e-12));
    StepPlan p;
    p.steps_per_sample = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(raw / static_cast<double>(intervals) * (1.0 - 1e-12))));
    p.steps_per_sample *= static_cast<std::size_t>(refine);
    p.steps = p.steps_per_sample * intervals;
    p.h = T / static_cast<double>(p.steps);
    return p;
}

void add_common_metadata(Metadata& md, const Bath& bath, RateMode mode, const IntegratorConfig& cfg,
                         const RunDiagnostics& d) {
    for (auto& kv : describe(bath)) md.push_back(std::move(kv));
    md.emplace_back("mode", to_string(mode));
    md.emplace_back("formulation", to_string(cfg.formulation));
    md.emplace_back("h", fmt(d.step));
    md.emplace_back("steps", std::to_string(d.steps));
    md.emplace_back("refine", std::to_string(cfg.refine));
    md.emplace_back("grid_step", fmt(d.grid_step));
    md.emplace_back("tail_tol", fmt(cfg.tail_tol));
    md.emplace_back("tau_c", fmt(d.tau_c));
    md.emplace_back("max_bloch_norm", fmt(d.max_bloch_norm));
    md.emplace_back("min_eigenvalue", fmt(d.min_eigenvalue));
    md.emplace_back("positivity_violated", d.positivity_violated ? "true" : "false");
    md.emplace_back("flagged", d.flagged ? "true" : "false");
    md.emplace_back("slow_gap_ratio_max", fmt(d.slow_gap_ratio_max));
}

Trajectory drive(const AdiabaticProblem* problem, const ScheduleSpec* schedule,
                 const FrameSnapshot* frozen, const Bath& bath, RateMode mode,
                 const DensityState& initial, double T, double alpha_max,
                 const IntegratorConfig& cfg) {
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T: must be positive and finite");
    const double h_bound = std::min(0.1 / alpha_max, T / 1000.0);
    double h_max = h_bound;
    if (cfg.h > 0.0) {
        if (cfg.h > h_bound * (1.0 + 1e-12)) {
            throw ConfigError("h: step " + fmt(cfg.h) + " exceeds min(0.1/alpha_max, T/1000) = " + fmt(h_bound));
        }
        h_max = cfg.h;
    }
    const StepPlan plan = plan_steps(T, h_max, cfg.samples, cfg.refine);
    const std::size_t half_steps = 2 * plan.steps;

    const double eta = coupling(bath);
    const bool open = eta != 0.0 && cfg.formulation != Formulation::ClosedUnitary;
    if (cfg.formulation == Formulation::ClosedUnitary && eta != 0.0) {
        throw ConfigError("formulation: closed_unitary requires eta = 0");
    }
    if (!(eta >= 0.0)) throw ConfigError("eta: coupling must be >= 0");

    Trajectory traj;
    auto& diag = traj.diagnostics;
    diag.step = plan.h;
    diag.steps = plan.steps;

    std::optional<CorrelationGrid> grid;
    std::size_t nodes_per_half = 1;
    if (open) {
        const double half = 0.5 * plan.h;
        double gmax = max_grid_step(bath, alpha_max);
        if (cfg.grid_step > 0.0) gmax = std::min(gmax, cfg.grid_step);
        nodes_per_half = static_cast<std::size_t>(std::ceil(half / gmax * (1.0 - 1e-12)));
        const double hg = half / static_cast<double>(nodes_per_half);
        grid = build_correlation_grid(bath, T, hg, cfg.tail_tol, cfg.max_grid_samples);
        if (grid->size() < half_steps * nodes_per_half + 1) {
            throw NumericalError("correlation grid shorter than the integration horizon");
        }
        diag.grid_step = hg;
        diag.tau_c = grid->tail_cut_time();
    }

    const StageSource source(problem, schedule, frozen, grid ? &*grid : nullptr, nodes_per_half, mode, T,
                             half_steps);
    switch (cfg.formulation) {
    case Formulation::MatrixRedfield:
        run_rk4<MatrixModel>(source, plan.steps, plan.steps_per_sample, initial, cfg, diag.tau_c, traj);
        break;
    case Formulation::Bloch:
        run_rk4<BlochModel>(source, plan.steps, plan.steps_per_sample, initial, cfg, diag.tau_c, traj);
        break;
    case Formulation::ClosedUnitary:
        run_rk4<UnitaryModel>(source, plan.steps, plan.steps_per_sample, initial, cfg, diag.tau_c, traj);
        break;
    }
    return traj;
}

} // namespace

Trajectory integrate(const AdiabaticProblem& problem, const ScheduleSpec& schedule, const Bath& bath,
                     RateMode mode, const IntegratorConfig& config) {
    Trajectory traj = drive(&problem, &schedule, nullptr, bath, mode, DensityState::ground(), schedule.T,
                            1.0, config);
    auto& md = traj.metadata;
    md.emplace_back("problem", problem.describe());
    md.emplace_back("schedule", to_string(schedule.kind));
    md.emplace_back("T", fmt(schedule.T));
    if (schedule.kind == ScheduleKind::Optimal) md.emplace_back("epsilon", fmt(schedule.epsilon));
    add_common_metadata(md, bath, mode, config, traj.diagnostics);
    md.emplace_back("final_success", fmt(traj.final_success()));
    return traj;
}

Trajectory integrate_frozen(const FrameSnapshot& frozen, const Bath& bath, RateMode mode,
                            const DensityState& initial, double T, const IntegratorConfig& config) {
    if (config.formulation == Formulation::ClosedUnitary) {
        throw ConfigError("formulation: closed_unitary is not available for frozen-frame runs");
    }
    FrameSnapshot f = frozen;
    f.theta_dot = 0.0;
    f.alpha_dot = 0.0;
    Trajectory traj = drive(nullptr, nullptr, &f, bath, mode, initial, T, std::max(1.0, f.alpha), config);
    auto& md = traj.metadata;
    md.emplace_back("frozen_alpha", fmt(f.alpha));
    md.emplace_back("T", fmt(T));
    add_common_metadata(md, bath, mode, config, traj.diagnostics);
    return traj;
}

} // namespace aqs
