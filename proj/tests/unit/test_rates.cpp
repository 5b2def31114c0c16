#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "aqs/bath.hpp"
#include "aqs/errors.hpp"
#include "aqs/rates.hpp"

using namespace aqs;
using std::numbers::pi;

namespace {

double rate_distance(const RateSet& a, const RateSet& b) {
    return std::max({std::abs(a.g00 - b.g00), std::abs(a.g01 - b.g01), std::abs(a.g10 - b.g10)});
}

} // namespace

TEST_SUITE("rates") {

TEST_CASE("grid quadrature agrees with adaptive quadrature") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ut(0.0, 200.0);
    std::uniform_real_distribution<double> ua(0.02, 1.0);
    const Bath baths[] = {OhmicBath{0.1, 1.0, 0.25}, OhmicBath{0.1, 1.0, 0.25, 4.0},
                          StructuredBath{0.4, 0.25, 0.3, +1}, StructuredBath{0.4, 0.25, 0.3, -1}};
    for (const auto& b : baths) {
        const auto grid = build_correlation_grid(b, 200.0, max_grid_step(b), 0.0);
        for (int k = 0; k < 10; ++k) {
            const double t = ut(rng);
            const double a = ua(rng);
            const auto r = rates_at(grid, t, a, RateMode::Complex);
            const auto q = rates_adaptive(b, t, a, RateMode::Complex);
            CHECK(rate_distance(r, q) < 1e-6);
        }
        // node-aligned evaluation is the same quadrature
        const std::size_t node = grid.size() / 3 * 2;
        const auto rn = rates_at_node(grid, node, 0.4, RateMode::Complex);
        const auto rt = rates_at(grid, node * grid.step(), 0.4, RateMode::Complex);
        CHECK(rate_distance(rn, rt) < 1e-12);
    }
}

TEST_CASE("structured rate at t = 50") {
    const StructuredBath b{1.0, 0.5, 0.5, +1};
    const auto grid = build_correlation_grid(b, 60.0, max_grid_step(b));
    const auto r = rates_at(grid, 50.0, 0.25, RateMode::Complex);
    const auto q = rates_adaptive(b, 50.0, 0.25, RateMode::Complex);
    CHECK(std::abs(r.g01 - q.g01) < 1e-6);
    CHECK(std::abs(r.g10 - q.g10) < 1e-6);
}

TEST_CASE("trivial limits") {
    const OhmicBath b{0.05, 1.0, 0.25};
    const auto grid = build_correlation_grid(b, 20.0, 0.05);
    const auto z = rates_at(grid, 0.0, 0.3, RateMode::Complex);
    CHECK(z.g00 == cplx{});
    CHECK(z.g01 == cplx{});
    CHECK(z.g10 == cplx{});
    for (double t : {0.7, 13.0, 20.0}) {
        const auto r = rates_at(grid, t, 0.0, RateMode::Complex);
        CHECK(std::abs(r.g01 - r.g00) < 1e-10);
        CHECK(std::abs(r.g10 - r.g00) < 1e-10);
    }
    CHECK_THROWS_AS(rates_at(grid, 20.5, 0.3, RateMode::Complex), DomainError);
    CHECK_THROWS_AS(rates_at(grid, 1.0, -0.3, RateMode::Complex), DomainError);
    CHECK_THROWS_AS(rates_at_node(grid, grid.size(), 0.3, RateMode::Complex), DomainError);
}

TEST_CASE("real-only mode zeroes the imaginary parts") {
    const StructuredBath b{0.2, 0.25, 0.3, +1};
    const auto grid = build_correlation_grid(b, 40.0, max_grid_step(b));
    const auto c = rates_at(grid, 37.0, 0.45, RateMode::Complex);
    const auto r = rates_at(grid, 37.0, 0.45, RateMode::RealOnly);
    CHECK(c.gIp() != 0.0);
    CHECK(r.gIp() == 0.0);
    CHECK(r.gIm() == 0.0);
    CHECK(r.im00() == 0.0);
    CHECK(r.gRp() == c.gRp());
    CHECK(r.gRm() == c.gRm());
    CHECK(r.re00() == c.re00());
    CHECK(rate_mode_from_string(to_string(RateMode::RealOnly)) == RateMode::RealOnly);
    CHECK(rate_mode_from_string("complex") == RateMode::Complex);
    CHECK_THROWS_AS(rate_mode_from_string("imaginary"), ConfigError);
}

TEST_CASE("thermal rates approach their stationary values") {
    const double eta = 0.05, wc = 0.25;
    const OhmicBath b{eta, 1.0, wc};
    const auto grid = build_correlation_grid(b, 4000.0, 0.05, 0.0);
    // Gamma_00(t) = eta wc^2 t / (1 + i wc t)
    for (double t : {0.5, 3.0, 40.0, 400.0}) {
        const auto r = rates_at(grid, t, 0.3, RateMode::Complex);
        const cplx ref = eta * wc * wc * t / cplx{1.0, wc * t};
        CHECK(std::abs(r.g00 - ref) < 1e-10);
    }
    // Re Gamma_01(inf) = pi J(alpha); Gamma_10 carries J(-alpha) = 0
    for (double a : {0.1, 0.5, 1.0}) {
        const auto r = rates_at(grid, 4000.0, a, RateMode::Complex);
        CHECK(std::abs(r.g01.real() - pi * J_thermal(b, a)) < 1e-6);
        CHECK(std::abs(r.g10.real()) < 1e-6);
    }
}

TEST_CASE("structured real rate settles inside the band gap") {
    const StructuredBath b{0.1, 0.25, 0.5, +1};
    const auto grid = build_correlation_grid(b, 1000.0, max_grid_step(b));
    const auto r1 = rates_at(grid, 250.0, 0.2, RateMode::Complex);
    const auto r2 = rates_at(grid, 1000.0, 0.2, RateMode::Complex);
    CHECK(std::abs(r2.g01.real() - r1.g01.real()) < 1e-4);
}

TEST_CASE("rates are linear in the coupling") {
    const StructuredBath b{0.1, 0.25, 0.3, +1};
    const Bath b3 = with_coupling(b, 0.3);
    const auto g1 = build_correlation_grid(b, 30.0, 0.02);
    const auto g3 = build_correlation_grid(b3, 30.0, 0.02);
    const auto r1 = rates_at(g1, 29.0, 0.6, RateMode::Complex);
    const auto r3 = rates_at(g3, 29.0, 0.6, RateMode::Complex);
    CHECK(std::abs(r3.g00 - 3.0 * r1.g00) < 1e-13);
    CHECK(std::abs(r3.g01 - 3.0 * r1.g01) < 1e-13);
    CHECK(std::abs(r3.g10 - 3.0 * r1.g10) < 1e-13);
}

TEST_CASE("delta-correlated limit") {
    // pure dephasing of the coherence at 2 * weight for a unit-normalized kernel
    const double w = 0.05;
    std::vector<double> fitted;
    for (double sigma : {0.5, 0.25, 0.125}) {
        const auto res = markovian_limit_check(GaussianBath{w, sigma}, 1.0);
        CHECK(res.analytic_rate == doctest::Approx(0.1));
        CHECK(std::abs(res.fitted_rate - res.analytic_rate) < 0.05 * res.analytic_rate);
        fitted.push_back(res.fitted_rate);
    }
    CHECK(std::abs(fitted[2] - fitted[1]) < std::abs(fitted[1] - fitted[0]) + 1e-6);

    const auto zero = markovian_limit_check(GaussianBath{0.0, 0.25}, 1.0, {30.0, 0.0, 1e-3});
    CHECK(std::abs(zero.fitted_rate) < 1e-9);

    const auto one = markovian_limit_check(GaussianBath{w, 0.25}, 1.0);
    const auto two = markovian_limit_check(GaussianBath{2.0 * w, 0.25}, 1.0);
    CHECK(two.fitted_rate == doctest::Approx(2.0 * one.fitted_rate).epsilon(0.05));

    CHECK_THROWS_AS(markovian_limit_check(GaussianBath{w, 0.0}, 1.0), ConfigError);
    CHECK_THROWS_AS(markovian_limit_check(GaussianBath{w, 0.1}, 0.0), ConfigError);
}

}
