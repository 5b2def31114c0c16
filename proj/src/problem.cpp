#include "aqs/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aqs/errors.hpp"

namespace aqs {

double AdiabaticProblem::gap(double s) const {
    return std::hypot(delta(s), omega(s));
}

std::string AdiabaticProblem::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (kind_ == ProblemKind::Grover) {
        os << "grover(n=" << qubits_ << ",N=" << size_ << ")";
    } else {
        os << "single_site(a0=" << a0_ << ")";
    }
    return os.str();
}

AdiabaticProblem make_grover(int n) {
    if (n < 1 || n > 30) {
        throw ConfigError("n: qubit count must lie in [1, 30], got " + std::to_string(n));
    }
    AdiabaticProblem p;
    const double N = std::ldexp(1.0, n);
    p.kind_ = ProblemKind::Grover;
    p.qubits_ = n;
    p.size_ = N;
    p.b0_ = 1.0 / std::sqrt(N);
    p.a0_ = std::sqrt((N - 1.0) / N);
    // Delta(s) = 2(1-s)/N + (2s-1), Omega(s) = 2(s-1) sqrt(N-1)/N
    p.delta0_ = 2.0 / N - 1.0;
    p.delta1_ = 2.0 - 2.0 / N;
    const double w = 2.0 * std::sqrt(N - 1.0) / N;
    p.omega0_ = -w;
    p.omega1_ = w;
    return p;
}

AdiabaticProblem make_single_site(double a0) {
    if (!(a0 > 0.0 && a0 < 1.0)) {
        throw ConfigError("a0: amplitude must lie in the open interval (0, 1)");
    }
    AdiabaticProblem p;
    const double b0 = std::sqrt(1.0 - a0 * a0);
    p.kind_ = ProblemKind::SingleSite;
    p.qubits_ = 0;
    p.a0_ = a0;
    p.b0_ = b0;
    p.size_ = 1.0 / (b0 * b0);
    // Delta(s) = (1-s)(b0^2 - a0^2) + s, Omega(s) = -2(1-s) a0 b0
    const double d = b0 * b0 - a0 * a0;
    p.delta0_ = d;
    p.delta1_ = 1.0 - d;
    p.omega0_ = -2.0 * a0 * b0;
    p.omega1_ = 2.0 * a0 * b0;
    return p;
}

namespace {

void check_time(double t, const ScheduleSpec& spec) {
    if (!(t >= 0.0 && t <= spec.T)) {
        std::ostringstream os;
        os.precision(17);
        os << "schedule time t=" << t << " outside [0, " << spec.T << "]";
        throw DomainError(os.str());
    }
}

double optimal_phase(double t, const ScheduleSpec& spec, double N) {
    const double r = std::sqrt(N - 1.0);
    return 2.0 * spec.epsilon * t * r / N - std::atan(r);
}

} // namespace

ScheduleSpec make_schedule(const AdiabaticProblem& problem, ScheduleKind kind, double T) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw ConfigError("T: total evolution time must be positive and finite");
    }
    ScheduleSpec spec{kind, T, 0.0};
    if (kind == ScheduleKind::Optimal) {
        // s_opt(T) = 1  <=>  2 eps T sqrt(N-1)/N = 2 atan(sqrt(N-1))
        const double N = problem.size();
        const double r = std::sqrt(N - 1.0);
        spec.epsilon = N * std::atan(r) / (T * r);
    }
    return spec;
}

double optimal_time(const AdiabaticProblem& problem, double eps) {
    if (!(eps > 0.0)) throw ConfigError("epsilon: must be positive");
    const double N = problem.size();
    const double r = std::sqrt(N - 1.0);
    return N * std::atan(r) / (eps * r);
}

double schedule_s(double t, const ScheduleSpec& spec, const AdiabaticProblem& problem) {
    check_time(t, spec);
    if (spec.kind == ScheduleKind::Linear) return t / spec.T;
    const double N = problem.size();
    const double r = std::sqrt(N - 1.0);
    return 0.5 * (1.0 + std::tan(optimal_phase(t, spec, N)) / r);
}

double schedule_sdot(double t, const ScheduleSpec& spec, const AdiabaticProblem& problem) {
    check_time(t, spec);
    if (spec.kind == ScheduleKind::Linear) return 1.0 / spec.T;
    const double N = problem.size();
    const double sec = 1.0 / std::cos(optimal_phase(t, spec, N));
    return spec.epsilon * sec * sec / N;
}

std::string to_string(ScheduleKind kind) {
    return kind == ScheduleKind::Linear ? "linear" : "optimal";
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
    if (name == "linear") return ScheduleKind::Linear;
    if (name == "optimal") return ScheduleKind::Optimal;
    throw ConfigError("schedule: expected 'linear' or 'optimal', got '" + name + "'");
}

FrameSnapshot frame(const AdiabaticProblem& problem, double s, double sdot) {
    FrameSnapshot f;
    f.s = s;
    f.delta = problem.delta(s);
    f.omega = problem.omega(s);
    f.alpha = std::hypot(f.delta, f.omega);
    if (!(f.alpha > 0.0)) {
        throw NumericalError("degenerate gap: alpha(s) = 0");
    }
    f.c = -f.delta / f.alpha;
    // + 0.0 turns -0 into +0 so theta stays at +pi/2 when Omega vanishes at s = 1
    f.s_trig = -f.omega / f.alpha + 0.0;
    // atan2 avoids the 0/0 of the sqrt formulas when Delta + alpha -> 0
    f.theta = 0.5 * std::atan2(f.s_trig, f.c);
    f.e0 = 0.5 - 0.5 * f.alpha;
    f.e1 = 0.5 + 0.5 * f.alpha;
    f.e2 = 1.0;
    const double a2 = f.alpha * f.alpha;
    const double dp = problem.delta_prime();
    const double op = problem.omega_prime();
    f.theta_dot = (f.delta * op - f.omega * dp) / (2.0 * a2) * sdot;
    f.alpha_dot = (f.delta * dp + f.omega * op) / f.alpha * sdot;
    return f;
}

double adiabatic_time_scale(const AdiabaticProblem& problem, int samples) {
    samples = std::max(samples, 2);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double s = static_cast<double>(k) / (samples - 1);
        const auto f = frame(problem, s, 1.0);
        // |<1|dH/ds|0>| = alpha |dtheta/ds|
        worst = std::max(worst, std::abs(f.theta_dot) / f.alpha);
    }
    return worst;
}

} // namespace aqs
