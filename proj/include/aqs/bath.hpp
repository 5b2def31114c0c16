// bath.hpp: environment models, i.e. correlation functions g(t), spectral
// densities J(w) and cached correlation grids

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace aqs {

using cplx = std::complex<double>;

// J(w) = eta w^s wc^(1-s) exp(-w/wc). beta = +inf means zero temperature.
struct OhmicBath {
    double eta{0.0};
    double s_exp{1.0};
    double omega_c{0.25};
    double beta{std::numeric_limits<double>::infinity()};

    bool zero_temperature() const { return beta == std::numeric_limits<double>::infinity(); }
};

// Photonic-crystal-like matter-wave reservoir:
// g(t) = OmegaL^2 exp(i sign DeltaL t) (1 + i w0 t)^(-3/2),
// OmegaL^2 = eta w0^(3/2) / (8 sqrt(pi)).
struct StructuredBath {
    double eta{0.0};
    double omega0{0.25};
    double deltaL{0.2};
    int phase_sign{+1};

    double omegaL2() const;
};

// Normalized Gaussian kernel of total weight `weight` and width `sigma`;
// a narrow stand-in for a delta-correlated bath. Not used by the experiments.
struct GaussianBath {
    double weight{0.0};
    double sigma{0.1};
};

using Bath = std::variant<OhmicBath, StructuredBath, GaussianBath>;

// Thermal correlation by adaptive quadrature over the spectral density.
// Throws NumericalError if the error estimate stays above tolerance.
cplx g_thermal(const OhmicBath& bath, double t);

// Thermal correlation in closed form: eta wc^(1-s) Gamma(s+1)/(1/wc + i t)^(s+1)
// at zero temperature; for s = 1 and finite beta adds the trigamma series of
// the thermal occupation. Falls back to g_thermal otherwise.
cplx g_thermal_analytic(const OhmicBath& bath, double t);

cplx g_structured(const StructuredBath& bath, double t);
cplx g_gaussian(const GaussianBath& bath, double t);

double J_thermal(const OhmicBath& bath, double omega);
double J_structured(const StructuredBath& bath, double omega);

// Fast evaluation route used by grids and the rate oracles.
cplx correlation(const Bath& bath, double t);
double spectral_density(const Bath& bath, double omega);

double coupling(const Bath& bath);
Bath with_coupling(const Bath& bath, double eta);
std::string bath_name(const Bath& bath);

// key=value pairs describing every bath parameter.
std::vector<std::pair<std::string, std::string>> describe(const Bath& bath);

// Largest grid step resolving both the correlation decay and e^{i alpha t}
// for alpha <= alpha_max.
double max_grid_step(const Bath& bath, double alpha_max = 1.0);

// Complex trigamma psi'(z) for Re z > 0.
cplx trigamma(cplx z);

class CorrelationGrid {
public:
    const Bath& bath() const { return bath_; }
    double step() const { return step_; }
    double horizon() const { return step_ * static_cast<double>(samples_.size() - 1); }
    std::size_t size() const { return samples_.size(); }
    // Samples with index >= tail_cut are treated as zero.
    std::size_t tail_cut() const { return tail_cut_; }
    double tail_cut_time() const;
    std::span<const cplx> samples() const { return samples_; }

    friend CorrelationGrid build_correlation_grid(const Bath&, double, double, double,
                                                  std::size_t);

private:
    Bath bath_;
    double step_{0.0};
    std::vector<cplx> samples_;
    std::size_t tail_cut_{0};
};

inline constexpr std::size_t kDefaultMaxGridSamples = 50'000'000;

// Samples g(k h_g) for k = 0..ceil(T_grid / h_g). tail_tol = 0 disables
// truncation.
CorrelationGrid build_correlation_grid(const Bath& bath, double T_grid, double h_g,
                                       double tail_tol = 1e-6,
                                       std::size_t max_samples = kDefaultMaxGridSamples);

// Debug dump: columns t, re_g, im_g.
void write_grid_csv(const CorrelationGrid& grid, std::ostream& os);

} // namespace aqs
