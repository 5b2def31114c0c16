#include "aqs/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "aqs/errors.hpp"

namespace aqs {

std::string to_string(RateMode mode) {
    return mode == RateMode::Complex ? "complex" : "real";
}

RateMode rate_mode_from_string(const std::string& name) {
    if (name == "complex") return RateMode::Complex;
    if (name == "real" || name == "real_only") return RateMode::RealOnly;
    throw ConfigError("mode: expected 'complex' or 'real', got '" + name + "'");
}

RateSet apply_mode(RateSet rates, RateMode mode) {
    if (mode == RateMode::RealOnly) {
        rates.g00 = {rates.g00.real(), 0.0};
        rates.g01 = {rates.g01.real(), 0.0};
        rates.g10 = {rates.g10.real(), 0.0};
    }
    return rates;
}

namespace {

struct Sums {
    cplx s00{};
    cplx p{}; // sum w g cos
    cplx q{}; // sum w g sin
};

// Quadrature weights (in units of h) for n intervals: Simpson when n is even,
// Simpson plus a closing 3/8 panel when n is odd, trapezoid when n = 1.
Sums grid_sums(std::span<const cplx> g, std::size_t n, double h, double alpha) {
    Sums acc;
    if (n == 0) return acc;

    auto kernel_at = [&](std::size_t k) { return std::polar(1.0, alpha * h * static_cast<double>(k)); };

    auto add = [&](double w, const cplx& gk, const cplx& z) {
        const cplx wg = w * gk;
        acc.s00 += wg;
        acc.p += wg * z.real();
        acc.q += wg * z.imag();
    };

    if (n == 1) {
        add(0.5, g[0], cplx{1.0, 0.0});
        add(0.5, g[1], kernel_at(1));
        return acc;
    }

    const std::size_t simpson_end = (n % 2 == 0) ? n : n - 3;
    // Simpson over [0, simpson_end]: weights 1/3, 4/3, 2/3, ..., 4/3, 1/3
    if (simpson_end > 0) {
        // Interior nodes 1..simpson_end-1 in blocks of four; each lane runs
        // its own kernel recurrence (step 4 alpha h) so the dependency chains
        // interleave. Lanes 0 and 2 hold odd nodes, lanes 1 and 3 even ones.
        // Kernels are reseeded from the exact value every 1024 nodes.
        const double r4r = std::cos(4.0 * alpha * h);
        const double r4i = std::sin(4.0 * alpha * h);
        double zr[4] = {}, zi[4] = {};
        double sr[4] = {}, si[4] = {}, pr[4] = {}, pi[4] = {}, qr[4] = {}, qi[4] = {};
        std::size_t k = 1;
        for (; k + 3 < simpson_end; k += 4) {
            if (((k - 1) & 1023u) == 0) {
                for (int l = 0; l < 4; ++l) {
                    const cplx z = kernel_at(k + l);
                    zr[l] = z.real();
                    zi[l] = z.imag();
                }
            } else {
                for (int l = 0; l < 4; ++l) {
                    const double t = zr[l] * r4r - zi[l] * r4i;
                    zi[l] = zr[l] * r4i + zi[l] * r4r;
                    zr[l] = t;
                }
            }
            for (int l = 0; l < 4; ++l) {
                const double gr = g[k + l].real();
                const double gi = g[k + l].imag();
                sr[l] += gr;
                si[l] += gi;
                pr[l] += gr * zr[l];
                pi[l] += gi * zr[l];
                qr[l] += gr * zi[l];
                qi[l] += gi * zi[l];
            }
        }
        for (; k < simpson_end; ++k) {
            const int l = (k & 1u) ? 0 : 1;
            const cplx z = kernel_at(k);
            const double gr = g[k].real();
            const double gi = g[k].imag();
            sr[l] += gr;
            si[l] += gi;
            pr[l] += gr * z.real();
            pi[l] += gi * z.real();
            qr[l] += gr * z.imag();
            qi[l] += gi * z.imag();
        }
        const cplx s_odd{sr[0] + sr[2], si[0] + si[2]}, s_even{sr[1] + sr[3], si[1] + si[3]};
        const cplx p_odd{pr[0] + pr[2], pi[0] + pi[2]}, p_even{pr[1] + pr[3], pi[1] + pi[3]};
        const cplx q_odd{qr[0] + qr[2], qi[0] + qi[2]}, q_even{qr[1] + qr[3], qi[1] + qi[3]};
        const cplx z_end = kernel_at(simpson_end);
        const double third = 1.0 / 3.0;
        acc.s00 += third * (g[0] + g[simpson_end] + 4.0 * s_odd + 2.0 * s_even);
        acc.p += third * (g[0] + g[simpson_end] * z_end.real() + 4.0 * p_odd + 2.0 * p_even);
        acc.q += third * (g[simpson_end] * z_end.imag() + 4.0 * q_odd + 2.0 * q_even);
    }
    if (simpson_end != n) {
        // 3/8 rule on [n-3, n]
        constexpr double w[4] = {3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0};
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t k = n - 3 + j;
            add(w[j], g[k], kernel_at(k));
        }
    }
    return acc;
}

RateSet finish(const Sums& sums, double scale, double t, double alpha, RateMode mode) {
    RateSet r;
    r.t = t;
    r.alpha = alpha;
    const cplx i{0.0, 1.0};
    r.g00 = scale * sums.s00;
    r.g01 = scale * (sums.p + i * sums.q);
    r.g10 = scale * (sums.p - i * sums.q);
    return apply_mode(r, mode);
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("rates: alpha must be >= 0");
}

} // namespace

RateSet rates_at_node(const CorrelationGrid& grid, std::size_t node, double alpha, RateMode mode) {
    check_alpha(alpha);
    if (node >= grid.size()) {
        throw DomainError("rates: node " + std::to_string(node) + " beyond correlation grid");
    }
    const double h = grid.step();
    const std::size_t n = std::min(node, grid.tail_cut() - 1);
    const Sums sums = grid_sums(grid.samples(), n, h, alpha);
    return finish(sums, h, static_cast<double>(node) * h, alpha, mode);
}

RateSet rates_at(const CorrelationGrid& grid, double t, double alpha, RateMode mode) {
    check_alpha(alpha);
    const double h = grid.step();
    if (!(t >= 0.0) || t > grid.horizon() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os.precision(17);
        os << "rates: t=" << t << " beyond correlation grid horizon " << grid.horizon();
        throw DomainError(os.str());
    }
    const auto node = std::min(static_cast<std::size_t>(std::floor(t / h)), grid.size() - 1);
    const double rest = t - static_cast<double>(node) * h;
    RateSet r = rates_at_node(grid, node, alpha, RateMode::Complex);
    r.t = t;
    if (rest > 0.0 && node < grid.tail_cut()) {
        const double t0 = static_cast<double>(node) * h;
        const double tm = t0 + 0.5 * rest;
        const cplx ga = grid.samples()[node];
        const cplx gm = correlation(grid.bath(), tm);
        const cplx gb = correlation(grid.bath(), t);
        auto piece = [&](double a) {
            return rest / 6.0 *
                   (ga * std::polar(1.0, a * t0) + 4.0 * gm * std::polar(1.0, a * tm) +
                    gb * std::polar(1.0, a * t));
        };
        r.g00 += rest / 6.0 * (ga + 4.0 * gm + gb);
        r.g01 += piece(alpha);
        r.g10 += piece(-alpha);
    }
    return apply_mode(r, mode);
}

RateSet rates_adaptive(const Bath& bath, double t, double alpha, RateMode mode, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    check_alpha(alpha);
    if (!(t >= 0.0)) throw DomainError("rates: t must be >= 0");
    RateSet r;
    r.t = t;
    r.alpha = alpha;
    if (t == 0.0) return r;

    double nu = alpha;
    if (const auto* sb = std::get_if<StructuredBath>(&bath)) nu += std::abs(sb->deltaL);
    double width = 1.0;
    if (nu > 0.0) width = std::min(width, std::numbers::pi / (4.0 * nu));
    if (const auto* gb = std::get_if<GaussianBath>(&bath)) width = std::min(width, gb->sigma);
    const auto panels = static_cast<std::size_t>(std::ceil(t / width));

    auto integrate = [&](double w) {
        auto f = [&](double u) { return correlation(bath, u) * std::polar(1.0, w * u); };
        cplx sum{};
        for (std::size_t k = 0; k < panels; ++k) {
            const double a = t * static_cast<double>(k) / static_cast<double>(panels);
            const double b = t * static_cast<double>(k + 1) / static_cast<double>(panels);
            sum += gauss_kronrod<double, 15>::integrate(f, a, b, 10, tol);
        }
        return sum;
    };
    r.g00 = integrate(0.0);
    r.g01 = integrate(alpha);
    r.g10 = integrate(-alpha);
    return apply_mode(r, mode);
}

} // namespace aqs
