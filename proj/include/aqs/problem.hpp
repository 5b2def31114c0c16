// problem.hpp: two-level adiabatic problems, interpolation schedules and
// instantaneous eigenframe quantities

#pragma once

#include <string>

namespace aqs {

enum class ProblemKind { Grover, SingleSite };

// Reduced Hamiltonian H(s) = 1/2 (Omega(s) sigma_x - Delta(s) sigma_z) in the
// basis {|m>, |m_perp>}. Both Delta and Omega are affine in s.
class AdiabaticProblem {
public:
    ProblemKind kind() const { return kind_; }
    int qubits() const { return qubits_; }       // 0 for SingleSite
    double size() const { return size_; }        // N; 1/b0^2 for SingleSite
    double a0() const { return a0_; }
    double b0() const { return b0_; }

    double delta(double s) const { return delta0_ + delta1_ * s; }
    double omega(double s) const { return omega0_ + omega1_ * s; }
    double delta_prime() const { return delta1_; }
    double omega_prime() const { return omega1_; }
    double gap(double s) const;

    std::string describe() const;

    friend AdiabaticProblem make_grover(int n);
    friend AdiabaticProblem make_single_site(double a0);

private:
    AdiabaticProblem() = default;

    ProblemKind kind_{ProblemKind::Grover};
    int qubits_{0};
    double size_{0.0};
    double a0_{0.0};
    double b0_{0.0};
    double delta0_{0.0}, delta1_{0.0};
    double omega0_{0.0}, omega1_{0.0};
};

// Grover search over N = 2^n items, 1 <= n <= 30.
AdiabaticProblem make_grover(int n);

// Single two-level system with initial ground state a0|0> + b0|1>, target |1>.
AdiabaticProblem make_single_site(double a0);

enum class ScheduleKind { Linear, Optimal };

struct ScheduleSpec {
    ScheduleKind kind{ScheduleKind::Linear};
    double T{1.0};
    double epsilon{0.0}; // only used by Optimal; set by make_schedule
};

// Builds a schedule over [0, T]. For Optimal, epsilon is chosen so s(T) = 1.
ScheduleSpec make_schedule(const AdiabaticProblem& problem, ScheduleKind kind, double T);

// T for which the optimal schedule runs with adiabatic error parameter eps.
double optimal_time(const AdiabaticProblem& problem, double eps);

double schedule_s(double t, const ScheduleSpec& spec, const AdiabaticProblem& problem);
double schedule_sdot(double t, const ScheduleSpec& spec, const AdiabaticProblem& problem);

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& name);

struct FrameSnapshot {
    double s{0.0};
    double delta{0.0};
    double omega{0.0};
    double alpha{1.0};     // gap E1 - E0
    double theta{0.0};     // mixing angle, |0> = sin(theta)|m> + cos(theta)|m_perp>
    double c{0.0};         // cos(2 theta) = -Delta/alpha
    double s_trig{0.0};    // sin(2 theta) = -Omega/alpha
    double e0{0.0};
    double e1{0.0};
    double e2{1.0};        // energy of the subspace orthogonal to {|m>, |m_perp>}
    double theta_dot{0.0};
    double alpha_dot{0.0};
};

// Instantaneous frame at schedule value s moving with ds/dt = sdot.
FrameSnapshot frame(const AdiabaticProblem& problem, double s, double sdot);

// max_s |<1(s)|dH/ds|0(s)>| / alpha(s)^2 on a uniform s grid. Diagnostic only.
double adiabatic_time_scale(const AdiabaticProblem& problem, int samples = 2001);

} // namespace aqs
