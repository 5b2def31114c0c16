// rates.hpp: frozen-gap complex dissipation rates Gamma_00, Gamma_01, Gamma_10

#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include "aqs/bath.hpp"

namespace aqs {

enum class RateMode { Complex, RealOnly };

std::string to_string(RateMode mode);
RateMode rate_mode_from_string(const std::string& name);

// Gamma_00 = int_0^t g(u) du
// Gamma_01 = int_0^t g(u) e^{+i alpha u} du
// Gamma_10 = int_0^t g(u) e^{-i alpha u} du
struct RateSet {
    double t{0.0};
    double alpha{0.0};
    cplx g00{};
    cplx g01{};
    cplx g10{};

    double gRp() const { return (g10 + g01).real(); }
    double gRm() const { return (g10 - g01).real(); }
    double gIp() const { return (g10 + g01).imag(); }
    double gIm() const { return (g10 - g01).imag(); }
    double re00() const { return g00.real(); }
    double im00() const { return g00.imag(); }
};

// Zeroes the imaginary parts under RealOnly.
RateSet apply_mode(RateSet rates, RateMode mode);

// Composite Simpson quadrature over the cached grid up to node index `node`
// (t = node * step). This is the integrator's hot path.
RateSet rates_at_node(const CorrelationGrid& grid, std::size_t node, double alpha, RateMode mode);

// Same quadrature for arbitrary t <= horizon; the fractional last panel is
// closed with a Simpson step on direct evaluations of g.
RateSet rates_at(const CorrelationGrid& grid, double t, double alpha, RateMode mode);

// Independent route: adaptive Gauss-Kronrod on g evaluated directly.
RateSet rates_adaptive(const Bath& bath, double t, double alpha, RateMode mode,
                       double tol = 1e-12);

// Delta-bath check: fitted and analytic pure-dephasing rates of the
// eigenbasis coherence in a frozen frame (theta_dot = 0, sin 2theta = 0).
struct MarkovianLimitResult {
    double fitted_rate{0.0};
    double analytic_rate{0.0};
    double fit_residual{0.0};
};

struct MarkovianLimitOptions {
    double duration{0.0};   // 0 -> 3 / analytic rate, at least 40 sigma
    double step{0.0};       // 0 -> min(sigma/10, 0.1/alpha)
    double residual_max{1e-3};
};

MarkovianLimitResult markovian_limit_check(const GaussianBath& bath, double static_alpha,
                                           const MarkovianLimitOptions& options = {});

} // namespace aqs
