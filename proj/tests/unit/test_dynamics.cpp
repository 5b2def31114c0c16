#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/numeric/odeint.hpp>
#include <doctest.h>

#include "aqs/dynamics.hpp"
#include "aqs/errors.hpp"
#include "aqs/experiments.hpp"

using namespace aqs;

namespace {

RateSet random_rates(std::mt19937_64& rng, double alpha) {
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    RateSet r;
    r.alpha = alpha;
    r.g00 = {u(rng), u(rng)};
    r.g01 = {u(rng), u(rng)};
    r.g10 = {u(rng), u(rng)};
    return r;
}

FrameSnapshot random_frame(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> us(0.0, 1.0);
    std::uniform_real_distribution<double> ud(-0.05, 0.05);
    return frame(make_grover(5), us(rng), ud(rng));
}

// Lab-frame Schroedinger solve in the {|m>, |m_perp>} basis with an adaptive
// Dormand-Prince stepper, projected on the eigenvectors
//   |0> = (sin th, cos th),  |1> = (-cos th, sin th)
// written with the half-angle formulas.
struct LabOracle {
    using State = std::array<double, 4>;
    const AdiabaticProblem& p;
    const ScheduleSpec& sp;

    void operator()(const State& v, State& d, double t) const {
        const double s = schedule_s(std::min(t, sp.T), sp, p);
        const double om = p.omega(s), de = p.delta(s);
        const std::complex<double> pm{v[0], v[1]}, pp{v[2], v[3]};
        const std::complex<double> mi{0.0, -1.0};
        const auto dm = mi * 0.5 * (-de * pm + om * pp);
        const auto dp = mi * 0.5 * (om * pm + de * pp);
        d = {dm.real(), dm.imag(), dp.real(), dp.imag()};
    }

    static std::pair<double, double> eigen(const AdiabaticProblem& p, double s) {
        const double de = p.delta(s), om = p.omega(s);
        const double a = std::hypot(de, om);
        return {std::sqrt((de + a) / (2.0 * a)), -om / std::sqrt(2.0 * a * (a + de))};
    }

    static DensityState project(const State& v, const AdiabaticProblem& p, double s) {
        const auto [sn, cs] = eigen(p, s);
        const std::complex<double> pm{v[0], v[1]}, pp{v[2], v[3]};
        const auto a0 = sn * pm + cs * pp;
        const auto a1 = -cs * pm + sn * pp;
        return {std::norm(a0), a0 * std::conj(a1)};
    }
};

double trace_distance(const DensityState& a, const DensityState& b) {
    // eigenvalues of the traceless hermitian difference are +-sqrt(dp^2 + |drho|^2)
    return std::hypot(a.p0 - b.p0, std::abs(a.rho01 - b.rho01));
}

Trajectory run(const AdiabaticProblem& p, ScheduleKind kind, double T, const Bath& bath,
               Formulation f, RateMode mode = RateMode::Complex, double h = 0.0) {
    IntegratorConfig cfg;
    cfg.formulation = f;
    cfg.h = h;
    return integrate(p, make_schedule(p, kind, T), bath, mode, cfg);
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("density state views") {
    const DensityState d{0.3, {0.1, -0.2}};
    const auto b = d.bloch();
    CHECK(b.x == doctest::Approx(0.2));
    CHECK(b.y == doctest::Approx(0.4));
    CHECK(b.z == doctest::Approx(0.4));
    const auto d2 = DensityState::from_bloch(b);
    CHECK(d2.p0 == doctest::Approx(0.3));
    CHECK(std::abs(d2.rho01 - d.rho01) < 1e-15);
    const auto d3 = DensityState::from_matrix(d.matrix());
    CHECK(d3.p0 == doctest::Approx(0.3));
    CHECK(std::abs(d3.rho01 - d.rho01) < 1e-15);
    CHECK(d.purity() == doctest::Approx(0.5 * (1.0 + b.x * b.x + b.y * b.y + b.z * b.z)));
    CHECK(d.min_eigenvalue() == doctest::Approx(0.5 * (1.0 - d.bloch_norm())));
    CHECK(DensityState::ground().p0 == 1.0);
    CHECK(DensityState::ground().bloch().z == -1.0);
}

TEST_CASE("maximally mixed state is stationary without coupling") {
    const DensityState mixed{0.5, {}};
    CHECK(success_probability(mixed, 1.0) == 0.5);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 5; ++k) {
        const auto f = random_frame(rng);
        RateSet zero;
        zero.alpha = f.alpha;
        const auto d = rhs_matrix(f, mixed, zero);
        CHECK(d.dp0 == 0.0);
        CHECK(std::abs(d.drho01) == 0.0);
    }
}

TEST_CASE("bloch and matrix generators coincide") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int k = 0; k < 50; ++k) {
        const auto f = random_frame(rng);
        const auto r = random_rates(rng, f.alpha);
        const BlochVector b{u(rng), u(rng), u(rng)};
        const auto dm = rhs_matrix(f, DensityState::from_bloch(b), r);
        const auto db = rhs_bloch(f, b, r);
        CHECK(std::abs(db.x - 2.0 * dm.drho01.real()) < 1e-12);
        CHECK(std::abs(db.y + 2.0 * dm.drho01.imag()) < 1e-12);
        CHECK(std::abs(db.z + 2.0 * dm.dp0) < 1e-12);
    }
}

TEST_CASE("bloch generator special cases") {
    auto f = frame(make_grover(4), 0.4, 0.0);
    RateSet zero;
    const BlochVector r{0.3, -0.2, 0.5};
    const auto p = rhs_bloch(f, r, zero);
    CHECK(p.x == doctest::Approx(f.alpha * r.y));
    CHECK(p.y == doctest::Approx(-f.alpha * r.x));
    CHECK(p.z == 0.0);

    std::mt19937_64 rng(3);
    f.theta_dot = 0.02;
    const auto g = random_rates(rng, f.alpha);
    const auto d = rhs_bloch(f, {}, g);
    const double cs = f.c * f.s_trig;
    CHECK(d.x == doctest::Approx(2.0 * cs * g.gRm()));
    CHECK(d.y == doctest::Approx(2.0 * cs * (g.gIp() - 2.0 * g.im00())));
    // the frame-rotation term multiplies rho_x, so it drops out here
    CHECK(d.z == doctest::Approx(2.0 * f.s_trig * f.s_trig * g.gRm()));
}

TEST_CASE("closed dynamics match a lab-frame Schroedinger solve") {
    namespace ode = boost::numeric::odeint;
    const auto p = make_grover(4);
    for (auto kind : {ScheduleKind::Linear, ScheduleKind::Optimal}) {
        const double T = 50.0;
        const auto sp = make_schedule(p, kind, T);
        IntegratorConfig cfg;
        cfg.h = 0.01;
        const auto traj = integrate(p, sp, OhmicBath{}, RateMode::Complex, cfg);

        const auto [sn, cs] = LabOracle::eigen(p, 0.0);
        LabOracle::State v{sn, 0.0, cs, 0.0};
        LabOracle sys{p, sp};
        auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<LabOracle::State>());
        double t = 0.0;
        double worst = 0.0;
        for (const auto& smp : traj.samples) {
            if (smp.t > t) {
                ode::integrate_adaptive(stepper, sys, v, t, smp.t, 1e-3);
                t = smp.t;
            }
            worst = std::max(worst, trace_distance(smp.state, LabOracle::project(v, p, smp.frame.s)));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("closed-limit equivalence of the three formulations") {
    for (const auto& p : {make_grover(10), make_grover(3), make_single_site(0.6)}) {
        for (auto kind : {ScheduleKind::Linear, ScheduleKind::Optimal}) {
            if (p.kind() == ProblemKind::SingleSite && kind == ScheduleKind::Optimal) continue;
            const double T = 120.0;
            const double m = run(p, kind, T, OhmicBath{}, Formulation::MatrixRedfield).final_success();
            const double b = run(p, kind, T, OhmicBath{}, Formulation::Bloch).final_success();
            const double u = run(p, kind, T, OhmicBath{}, Formulation::ClosedUnitary).final_success();
            CHECK(std::abs(m - b) < 1e-6);
            CHECK(std::abs(m - u) < 1e-6);
        }
    }
}

TEST_CASE("closed reference runs") {
    const auto p = make_grover(10);
    SUBCASE("optimal schedule at eps = 0.1") {
        const double T = std::numbers::pi * 32.0 / 0.2;
        CHECK(run(p, ScheduleKind::Optimal, T, OhmicBath{}, Formulation::MatrixRedfield).final_success() >= 0.98);
    }
    SUBCASE("sudden limit") {
        const double ps = run(p, ScheduleKind::Linear, 1e-3, OhmicBath{}, Formulation::MatrixRedfield).final_success();
        CHECK(std::abs(ps - 1.0 / 1024.0) < 1e-4);
    }
    SUBCASE("trajectory shape") {
        const auto tr = run(p, ScheduleKind::Linear, 50.0, OhmicBath{}, Formulation::MatrixRedfield);
        CHECK(tr.samples.size() >= 200);
        CHECK(tr.samples.front().t == 0.0);
        CHECK(tr.samples.back().t == 50.0);
        CHECK(tr.samples.front().state.p0 == 1.0);
        for (std::size_t k = 1; k < tr.samples.size(); ++k) CHECK(tr.samples[k].t > tr.samples[k - 1].t);
        CHECK(tr.samples.back().frame.s == 1.0);
    }
}

TEST_CASE("open-system runs") {
    const auto p = make_grover(10);
    const double T = 0.2 * linear_time(p);
    const OhmicBath b{0.05, 1.0, 0.25};

    SUBCASE("bloch and matrix agree on a thermal run") {
        const double m = run(p, ScheduleKind::Linear, T, b, Formulation::MatrixRedfield).final_success();
        const double bl = run(p, ScheduleKind::Linear, T, b, Formulation::Bloch).final_success();
        CHECK(std::abs(m - bl) < 2e-3);
    }
    SUBCASE("linear response in the coupling") {
        const double p0 = run(p, ScheduleKind::Linear, T, OhmicBath{}, Formulation::MatrixRedfield).final_success();
        const double p1 = run(p, ScheduleKind::Linear, T, OhmicBath{0.01, 1.0, 0.25}, Formulation::MatrixRedfield).final_success();
        const double p2 = run(p, ScheduleKind::Linear, T, OhmicBath{0.005, 1.0, 0.25}, Formulation::MatrixRedfield).final_success();
        const double ratio = (p1 - p0) / (p2 - p0);
        CHECK(ratio >= 1.8);
        CHECK(ratio <= 2.2);
    }
    SUBCASE("diagnostics are consistent") {
        const auto tr = run(p, ScheduleKind::Linear, T, b, Formulation::MatrixRedfield);
        const auto& d = tr.diagnostics;
        double rmax = 0.0;
        for (const auto& smp : tr.samples) rmax = std::max(rmax, smp.state.bloch_norm());
        CHECK(d.max_bloch_norm >= rmax - 1e-15);
        CHECK(d.positivity_violated == (d.max_bloch_norm > 1.0 + 1e-6));
        CHECK(d.flagged == (d.max_bloch_norm > 1.05));
        CHECK(d.tau_c > 0.0);
        CHECK(d.slow_gap_ratio_max > 0.0);
    }
}

TEST_CASE("configuration errors") {
    const auto p = make_grover(4);
    const auto sp = make_schedule(p, ScheduleKind::Linear, 10.0);
    IntegratorConfig cfg;
    cfg.h = 0.02; // T/1000 = 0.01
    CHECK_THROWS_AS(integrate(p, sp, OhmicBath{}, RateMode::Complex, cfg), ConfigError);
    cfg.h = 0.0;
    cfg.samples = 1;
    CHECK_THROWS_AS(integrate(p, sp, OhmicBath{}, RateMode::Complex, cfg), ConfigError);
    cfg.samples = 201;
    cfg.formulation = Formulation::ClosedUnitary;
    CHECK_THROWS_AS(integrate(p, sp, OhmicBath{0.01, 1.0, 0.25}, RateMode::Complex, cfg), ConfigError);
    CHECK(formulation_from_string(to_string(Formulation::Bloch)) == Formulation::Bloch);
    CHECK_THROWS_AS(formulation_from_string("lindblad"), ConfigError);
    CHECK_THROWS_AS(success_probability(DensityState{}, 1.5), DomainError);
}

}
