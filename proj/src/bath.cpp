#include "aqs/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "aqs/errors.hpp"
#include "aqs/format.hpp"

namespace aqs {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double x) { return format_double(x); }

// J(w) coth(beta w / 2), finite as w -> 0 for s_exp = 1.
double thermal_weight(const OhmicBath& b, double w) {
    const double J = J_thermal(b, w);
    if (b.zero_temperature()) return J;
    const double x = 0.5 * b.beta * w;
    if (x < 1e-8) {
        // J ~ eta w^s wc^(1-s): J coth(x) -> J / x
        return J / x;
    }
    return J / std::tanh(x);
}

} // namespace

double StructuredBath::omegaL2() const {
    return eta * std::pow(omega0, 1.5) / (8.0 * std::sqrt(kPi));
}

cplx g_thermal(const OhmicBath& bath, double t) {
    using boost::math::quadrature::gauss_kronrod;
    using boost::math::quadrature::tanh_sinh;
    const double wc = bath.omega_c;
    double factor = 40.0 + 2.0 * bath.s_exp;
    if (!bath.zero_temperature()) factor = std::max(factor, 10.0 + 5.0 / (bath.beta * wc));
    const double w_cut = wc * factor;

    auto f = [&](double w) -> cplx {
        const double re = thermal_weight(bath, w) * std::cos(w * t);
        const double im = -J_thermal(bath, w) * std::sin(w * t);
        return {re, im};
    };

    // Panels no wider than pi/(4|t|) so each holds at most 1/8 of an oscillation.
    double width = wc;
    if (t != 0.0) width = std::min(width, kPi / (4.0 * std::abs(t)));
    const auto panels = static_cast<std::size_t>(std::ceil(w_cut / width));
    // w^s with non-integer s (or w^(s-1) at finite temperature) is not smooth at 0
    const bool rough_origin = bath.s_exp != std::floor(bath.s_exp) || (!bath.zero_temperature() && bath.s_exp < 1.0);

    cplx sum{0.0, 0.0};
    double err = 0.0;
    double l1 = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double a = w_cut * static_cast<double>(k) / static_cast<double>(panels);
        const double b = w_cut * static_cast<double>(k + 1) / static_cast<double>(panels);
        double e = 0.0;
        double pl1 = 0.0;
        if (k == 0 && rough_origin) {
            tanh_sinh<double> ts;
            double er = 0.0, ei = 0.0, lr = 0.0, li = 0.0;
            const double re = ts.integrate([&](double w) { return f(w).real(); }, a, b, 1e-13, &er, &lr);
            const double im = ts.integrate([&](double w) { return f(w).imag(); }, a, b, 1e-13, &ei, &li);
            sum += cplx{re, im};
            e = er * std::abs(re) + ei * std::abs(im);
            pl1 = std::hypot(lr, li);
        } else {
            sum += gauss_kronrod<double, 31>::integrate(f, a, b, 5, 1e-12, &e, &pl1);
        }
        err += e;
        l1 += pl1;
    }
    if (!(err <= 1e-9 * l1 + 1e-300) || !std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
        std::ostringstream os;
        os << "g_thermal: quadrature did not converge at t=" << t << " (error estimate " << err
           << ", L1 " << l1 << ", panels " << panels << ")";
        throw NumericalError(os.str());
    }
    return sum;
}

cplx trigamma(cplx z) {
    if (!(z.real() > 0.0)) throw DomainError("trigamma: requires Re z > 0");
    cplx acc{0.0, 0.0};
    while (std::abs(z) < 12.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    const cplx iz = 1.0 / z;
    const cplx iz2 = iz * iz;
    // psi'(z) ~ 1/z + 1/(2z^2) + sum_k B_2k / z^(2k+1)
    const cplx tail =
        1.0 / 6.0 +
        iz2 * (-1.0 / 30.0 +
               iz2 * (1.0 / 42.0 +
                      iz2 * (-1.0 / 30.0 +
                             iz2 * (5.0 / 66.0 + iz2 * (-691.0 / 2730.0 + iz2 * (7.0 / 6.0))))));
    return acc + iz * (1.0 + 0.5 * iz + iz2 * tail);
}

cplx g_thermal_analytic(const OhmicBath& bath, double t) {
    const double wc = bath.omega_c;
    const double s = bath.s_exp;
    // int_0^inf eta w^s wc^(1-s) e^{-w/wc} e^{-iwt} dw
    const cplx a{1.0 / wc, t};
    const cplx vacuum = bath.eta * std::pow(wc, 1.0 - s) * boost::math::tgamma(s + 1.0) *
                        std::pow(a, -(s + 1.0));
    if (bath.zero_temperature()) return vacuum;
    if (s != 1.0) return g_thermal(bath, t);
    // coth(x/2) - 1 = 2 sum_k e^{-k x}:  2 eta sum_k Re 1/(1/wc + k beta + i t)^2
    const cplx x = a / bath.beta;
    const double thermal = 2.0 * bath.eta / (bath.beta * bath.beta) * trigamma(1.0 + x).real();
    return vacuum + thermal;
}

cplx g_structured(const StructuredBath& bath, double t) {
    const cplx nu2{1.0, bath.omega0 * t};
    // principal branch; Re(1 + i w0 t) = 1 keeps the base off the cut
    const cplx phase = std::polar(1.0, static_cast<double>(bath.phase_sign) * bath.deltaL * t);
    return bath.omegaL2() * phase * std::pow(nu2, -1.5);
}

cplx g_gaussian(const GaussianBath& bath, double t) {
    const double sg = bath.sigma;
    return {bath.weight * std::exp(-0.5 * t * t / (sg * sg)) / (sg * std::sqrt(2.0 * kPi)), 0.0};
}

double J_thermal(const OhmicBath& bath, double omega) {
    if (omega <= 0.0) return 0.0;
    return bath.eta * std::pow(omega, bath.s_exp) * std::pow(bath.omega_c, 1.0 - bath.s_exp) *
           std::exp(-omega / bath.omega_c);
}

double J_structured(const StructuredBath& bath, double omega) {
    const double x = omega - bath.deltaL;
    if (x <= 0.0) return 0.0;
    return bath.eta * std::sqrt(2.0 * x) * std::exp(-2.0 * x / bath.omega0);
}

cplx correlation(const Bath& bath, double t) {
    return std::visit(overloaded{
                          [t](const OhmicBath& b) { return g_thermal_analytic(b, t); },
                          [t](const StructuredBath& b) { return g_structured(b, t); },
                          [t](const GaussianBath& b) { return g_gaussian(b, t); },
                      },
                      bath);
}

double spectral_density(const Bath& bath, double omega) {
    return std::visit(overloaded{
                          [omega](const OhmicBath& b) { return J_thermal(b, omega); },
                          [omega](const StructuredBath& b) { return J_structured(b, omega); },
                          [omega](const GaussianBath& b) {
                              const double sg = b.sigma;
                              return b.weight / (2.0 * kPi) * std::exp(-0.5 * sg * sg * omega * omega);
                          },
                      },
                      bath);
}

double coupling(const Bath& bath) {
    return std::visit(overloaded{
                          [](const OhmicBath& b) { return b.eta; },
                          [](const StructuredBath& b) { return b.eta; },
                          [](const GaussianBath& b) { return b.weight; },
                      },
                      bath);
}

Bath with_coupling(const Bath& bath, double eta) {
    return std::visit(overloaded{
                          [eta](OhmicBath b) -> Bath { b.eta = eta; return b; },
                          [eta](StructuredBath b) -> Bath { b.eta = eta; return b; },
                          [eta](GaussianBath b) -> Bath { b.weight = eta; return b; },
                      },
                      bath);
}

std::string bath_name(const Bath& bath) {
    return std::visit(overloaded{
                          [](const OhmicBath&) { return std::string("thermal"); },
                          [](const StructuredBath&) { return std::string("structured"); },
                          [](const GaussianBath&) { return std::string("gaussian"); },
                      },
                      bath);
}

std::vector<std::pair<std::string, std::string>> describe(const Bath& bath) {
    std::vector<std::pair<std::string, std::string>> kv{{"bath", bath_name(bath)}};
    std::visit(overloaded{
                   [&](const OhmicBath& b) {
                       kv.emplace_back("eta", fmt(b.eta));
                       kv.emplace_back("s_exp", fmt(b.s_exp));
                       kv.emplace_back("omega_c", fmt(b.omega_c));
                       kv.emplace_back("beta", b.zero_temperature() ? "inf" : fmt(b.beta));
                   },
                   [&](const StructuredBath& b) {
                       kv.emplace_back("eta", fmt(b.eta));
                       kv.emplace_back("omega0", fmt(b.omega0));
                       kv.emplace_back("deltaL", fmt(b.deltaL));
                       kv.emplace_back("phase_sign", std::to_string(b.phase_sign));
                       kv.emplace_back("omegaL2", fmt(b.omegaL2()));
                   },
                   [&](const GaussianBath& b) {
                       kv.emplace_back("weight", fmt(b.weight));
                       kv.emplace_back("sigma", fmt(b.sigma));
                   },
               },
               bath);
    return kv;
}

double max_grid_step(const Bath& bath, double alpha_max) {
    const double osc = 0.05 / alpha_max;
    return std::visit(overloaded{
                          [&](const OhmicBath& b) { return std::min(0.1 / b.omega_c, osc); },
                          [&](const StructuredBath& b) {
                              return std::min(0.1 / b.omega0,
                                              0.05 / (alpha_max + std::abs(b.deltaL)));
                          },
                          [&](const GaussianBath& b) { return std::min(0.1 * b.sigma, osc); },
                      },
                      bath);
}

double CorrelationGrid::tail_cut_time() const {
    return step_ * static_cast<double>(std::min(tail_cut_, samples_.size() - 1));
}

CorrelationGrid build_correlation_grid(const Bath& bath, double T_grid, double h_g,
                                       double tail_tol, std::size_t max_samples) {
    if (!(h_g > 0.0)) throw ConfigError("grid_step: must be positive");
    if (!(T_grid >= 0.0) || !std::isfinite(T_grid)) throw ConfigError("grid horizon must be finite and >= 0");
    if (!(tail_tol >= 0.0)) throw ConfigError("tail_tol: must be >= 0");
    const double limit = max_grid_step(bath);
    if (h_g > limit * (1.0 + 1e-12)) {
        throw ConfigError("grid_step: " + fmt(h_g) + " exceeds the resolution bound " + fmt(limit));
    }
    const double intervals = std::ceil(T_grid / h_g * (1.0 - 1e-12));
    if (intervals + 1.0 > static_cast<double>(max_samples)) {
        throw ConfigError("grid_step: correlation grid of " + fmt(intervals + 1.0) +
                          " samples exceeds the cap of " + std::to_string(max_samples));
    }
    CorrelationGrid grid;
    grid.bath_ = bath;
    grid.step_ = h_g;
    const auto n = static_cast<std::size_t>(intervals) + 1;
    grid.samples_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        grid.samples_[k] = correlation(bath, static_cast<double>(k) * h_g);
    }
    grid.tail_cut_ = n;
    if (tail_tol > 0.0) {
        const double cut = tail_tol * std::abs(grid.samples_[0]);
        for (std::size_t k = 1; k < n; ++k) {
            if (std::abs(grid.samples_[k]) < cut) {
                grid.tail_cut_ = k;
                break;
            }
        }
    }
    return grid;
}

void write_grid_csv(const CorrelationGrid& grid, std::ostream& os) {
    os.precision(17);
    os << "t,re_g,im_g\n";
    const auto s = grid.samples();
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << static_cast<double>(k) * grid.step() << ',' << s[k].real() << ',' << s[k].imag() << '\n';
    }
}

} // namespace aqs
