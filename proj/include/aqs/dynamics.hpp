// dynamics.hpp: Bloch-Redfield dynamics in the instantaneous eigenbasis
//
// Three formulations share one fixed-step RK4 driver:
//   MatrixRedfield  2x2 generator, the reference formulation
//   Bloch           the same generator written for (rho_x, rho_y, rho_z)
//   ClosedUnitary   lab-frame Schroedinger equation (closed system only)

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aqs/bath.hpp"
#include "aqs/format.hpp"
#include "aqs/problem.hpp"
#include "aqs/rates.hpp"

namespace aqs {

// rho = 1/2 (1 + x sigma_x + y sigma_y + z sigma_z) with |1> as the +z state,
// so z = p1 - p0.
struct BlochVector {
    double x{0.0};
    double y{0.0};
    double z{0.0};
};

// Reduced density matrix in the instantaneous eigenbasis {|0(t)>, |1(t)>}.
struct DensityState {
    double p0{1.0};
    cplx rho01{};

    double p1() const { return 1.0 - p0; }
    Eigen::Matrix2cd matrix() const;
    BlochVector bloch() const;
    double bloch_norm() const;
    double purity() const;
    double min_eigenvalue() const;

    static DensityState ground() { return {}; }
    static DensityState from_bloch(const BlochVector& b);
    static DensityState from_matrix(const Eigen::Matrix2cd& m);
};

// Time derivative of (p0, rho01).
struct StateDerivative {
    double dp0{0.0};
    cplx drho01{};
};

enum class Formulation { MatrixRedfield, Bloch, ClosedUnitary };

std::string to_string(Formulation f);
Formulation formulation_from_string(const std::string& name);

struct IntegratorConfig {
    Formulation formulation{Formulation::MatrixRedfield};
    double h{0.0};          // 0 -> min(0.1 / alpha_max, T / 1000)
    int refine{1};          // step count multiplier; 2 halves the planned step
    double grid_step{0.0};  // 0 -> largest admissible divisor of h/2
    double tail_tol{1e-6};
    int samples{201};
    bool record_rates{false};
    double tol_pos{1e-6};
    double flag_threshold{0.05};
    std::size_t max_grid_samples{kDefaultMaxGridSamples};
};

struct TrajectorySample {
    double t{0.0};
    FrameSnapshot frame;
    DensityState state;
    std::optional<RateSet> rates;
};

struct RunDiagnostics {
    double step{0.0};
    std::size_t steps{0};
    double grid_step{0.0};
    double tau_c{0.0};             // tail-cut time of the correlation grid
    double max_bloch_norm{0.0};
    double min_eigenvalue{0.0};
    bool positivity_violated{false}; // |r| > 1 + tol_pos somewhere
    bool flagged{false};             // |r| > 1 + flag_threshold somewhere
    double slow_gap_ratio_max{0.0};  // max |alpha_dot / alpha| tau_c
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    RunDiagnostics diagnostics;
    Metadata metadata;

    double final_success() const;
};

// Eigenbasis coupling operator sigma_z(m basis) = -c sigma_z - s sigma_x.
Eigen::Matrix2cd coupling_operator(const FrameSnapshot& f);

// Generator of the reduced dynamics in the moving eigenbasis:
//   d rho/dt = -i[D, rho] - [A, L rho] + [A, rho L^dag] + [rho, W]
// with D = diag(-alpha/2, alpha/2), L_nm = A_nm K(E_m - E_n) built from the
// frozen-gap rates, and W_kn = <k|d n/dt> the frame rotation.
StateDerivative rhs_matrix(const FrameSnapshot& f, const DensityState& state, const RateSet& rates);
StateDerivative rhs_matrix(double t, const DensityState& state, const AdiabaticProblem& problem,
                           const ScheduleSpec& schedule, const RateSet& rates);

// Same generator in Bloch form.
BlochVector rhs_bloch(const FrameSnapshot& f, const BlochVector& r, const RateSet& rates);

// Population of the instantaneous ground state; at s = 1 this is the
// probability of reading the marked item.
double success_probability(const DensityState& state, double s);

Trajectory integrate(const AdiabaticProblem& problem, const ScheduleSpec& schedule,
                     const Bath& bath, RateMode mode, const IntegratorConfig& config = {});

// Constant-frame run (theta_dot = 0) used by the delta-bath check.
Trajectory integrate_frozen(const FrameSnapshot& frozen, const Bath& bath, RateMode mode,
                            const DensityState& initial, double T,
                            const IntegratorConfig& config = {});

// Default step for a run of length T.
double default_step(double T);

} // namespace aqs
