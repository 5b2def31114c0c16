#include <cmath>
#include <numbers>

#include <doctest.h>

#include "aqs/errors.hpp"
#include "aqs/experiments.hpp"

using namespace aqs;

namespace {

TimeSweepSpec small_time_spec() {
    TimeSweepSpec spec;
    spec.problem = make_grover(4);
    spec.bath = OhmicBath{0.0, 1.0, 0.25};
    spec.series = {{RateMode::Complex, 0.05}, {RateMode::RealOnly, 0.05}, {RateMode::Complex, 0.0}};
    spec.times = geometric_grid(40.0, 0.25, 3);
    return spec;
}

bool same_rows(const SweepResult& a, const SweepResult& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i];
        const auto& y = b.rows[i];
        if (x.success != y.success || x.mode != y.mode || x.eta != y.eta || x.axis != y.axis ||
            x.diagnostics.max_bloch_norm != y.diagnostics.max_bloch_norm) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("grids") {
    const auto g = geometric_grid(100.0, 0.01, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(1.0));
    CHECK(g[2] == doctest::Approx(10.0));
    CHECK(g.back() == 100.0);
    CHECK(geometric_grid(7.0, 0.5, 1) == std::vector<double>{7.0});
    const auto l = linear_grid(0.05, 0.6, 23);
    CHECK(l.size() == 23);
    CHECK(l[1] - l[0] == doctest::Approx(0.025));
    CHECK(l.back() == 0.6);
    CHECK_THROWS_AS(geometric_grid(-1.0, 0.1, 3), ConfigError);
    CHECK_THROWS_AS(geometric_grid(1.0, 0.0, 3), ConfigError);
    CHECK_THROWS_AS(linear_grid(1.0, 0.5, 3), ConfigError);
    CHECK(linear_time(make_grover(10)) == doctest::Approx(4096.0 / std::numbers::pi));
}

TEST_CASE("time sweep layout, baseline and determinism") {
    auto spec = small_time_spec();
    const auto res = sweep_total_time(spec);
    REQUIRE(res.rows.size() == 3 * 4);
    CHECK(res.axis_name == "T");
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& closed = res.rows[i * 4];
        CHECK(closed.mode == "closed");
        CHECK(closed.error.empty());
        // the baseline is exactly a standalone closed run
        const auto sp = make_schedule(spec.problem, spec.schedule, closed.T);
        const double ref = integrate(spec.problem, sp, spec.bath, RateMode::Complex, spec.integrator).final_success();
        CHECK(std::abs(closed.success - ref) < 1e-12);
        // an eta = 0 series reproduces it
        CHECK(res.rows[i * 4 + 3].success == closed.success);
        CHECK(res.rows[i * 4 + 1].mode == "complex");
        CHECK(res.rows[i * 4 + 2].mode == "real");
    }
    CHECK(res.rows.back().t_over_tmax == 1.0);
    CHECK(res.series("complex", 0.05).size() == 3);
    CHECK(res.series("closed", 0.0).size() == 3);

    spec.jobs = 3;
    CHECK(same_rows(res, sweep_total_time(spec)));

    spec.times = {10.0, 5.0};
    CHECK_THROWS_AS(sweep_total_time(spec), ConfigError);
    spec.times = {5.0};
    spec.series = {{RateMode::Complex, -0.1}};
    CHECK_THROWS_AS(sweep_total_time(spec), ConfigError);
}

TEST_CASE("detuning sweep") {
    DetuningSweepSpec spec;
    spec.problem = make_grover(4);
    spec.bath = StructuredBath{0.0, 0.25, 0.2, +1};
    spec.series = {{RateMode::Complex, 0.1}, {RateMode::Complex, 0.0}};
    spec.detunings = linear_grid(0.1, 0.5, 3);
    spec.T = 20.0;
    const auto res = sweep_detuning(spec);
    REQUIRE(res.rows.size() == 9);
    const double base = res.rows[0].success;
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(res.rows[i * 3].mode == "closed");
        CHECK(res.rows[i * 3].success == base);
        CHECK(res.rows[i * 3 + 2].success == base);
        CHECK(res.rows[i * 3 + 1].deltaL == spec.detunings[i]);
    }
    spec.jobs = 2;
    CHECK(same_rows(res, sweep_detuning(spec)));
}

TEST_CASE("two-level runs need the single-site problem and a structured bath") {
    auto spec = two_level_spec();
    spec.problem = make_grover(3);
    CHECK_THROWS_AS(two_level_run(spec), ConfigError);
    spec = two_level_spec();
    spec.bath = OhmicBath{};
    CHECK_THROWS_AS(two_level_run(spec), ConfigError);
}

TEST_CASE("default study specs") {
    const auto th = thermal_time_spec(RateMode::Complex, {0.05, 0.1});
    const double tl = linear_time(make_grover(10));
    CHECK(th.times.size() == 12);
    CHECK(th.times.back() == doctest::Approx(0.8 * tl));
    CHECK(th.times.front() == doctest::Approx(0.04 * tl));
    const auto st = structured_time_spec(0.3, {0.1});
    CHECK(st.times.back() == doctest::Approx(tl));
    CHECK(std::get<StructuredBath>(st.bath).deltaL == 0.3);
    const auto dt = detuning_spec();
    CHECK(dt.detunings.size() == 23);
    CHECK(dt.T == doctest::Approx(0.8 * tl));
    const auto tw = two_level_spec();
    CHECK(tw.problem.kind() == ProblemKind::SingleSite);
}

TEST_CASE("gap and spectral map") {
    const auto p = make_grover(10);
    const OhmicBath b{0.1, 1.0, 0.25};
    const auto s = linear_grid(0.0, 1.0, 101);
    const auto w = linear_grid(0.0, 1.2, 25);
    const auto map = gap_spectral_map(p, b, s, w);
    REQUIRE(map.gaps.size() == 101);
    CHECK(map.background.size() == 101 * 25);
    for (const auto& r : map.gaps) {
        CHECK(std::abs(r.e10 + r.e21 - r.e20) < 1e-14);
        CHECK(r.e10 == doctest::Approx(p.gap(r.s)));
    }
    CHECK(map.gaps[50].e21 == doctest::Approx(0.484375).epsilon(1e-12));
    CHECK(map.gaps[50].e20 == doctest::Approx(0.515625).epsilon(1e-12));
    const auto& cell = map.background[3 * 25 + 7];
    CHECK(cell.s == s[3]);
    CHECK(cell.omega == w[7]);
    CHECK(cell.J == J_thermal(b, w[7]));
}

TEST_CASE("golden-rule profile") {
    const auto p = make_grover(10);
    const auto s = linear_grid(0.0, 1.0, 11);
    const auto st = golden_rule_profile(p, StructuredBath{0.1, 0.25, 0.2, +1}, s);
    REQUIRE(st.size() == 11);
    // at the minimum gap the 0-1 transition lies below the band edge
    CHECK(st[5].J01 == 0.0);
    CHECK(st[5].w12 == doctest::Approx(0.5 - 1.0 / 64.0));
    const OhmicBath b{0.1, 1.0, 0.25};
    const auto th = golden_rule_profile(p, b, s);
    for (const auto& r : th) CHECK(r.J01 > 0.0);
    CHECK(th[0].w01 == doctest::Approx(1.0));
    CHECK(th[0].J01 == doctest::Approx(0.1 * std::exp(-4.0)));
    CHECK(th[0].w02 == doctest::Approx(1.0));
    CHECK(th[0].w12 == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("schedule calibration picks the linear schedule") {
    const auto res = calibrate_schedule(make_grover(10));
    CHECK(res.T == doctest::Approx(4096.0 / std::numbers::pi));
    REQUIRE(res.chosen.has_value());
    CHECK(*res.chosen == ScheduleKind::Linear);
    CHECK(std::abs(res.linear_success - 0.55) <= 0.10);
    CHECK(res.optimal_success > 0.9);
    CHECK_THROWS_AS(calibrate_schedule(make_grover(4), 1.5), ConfigError);
}

}
