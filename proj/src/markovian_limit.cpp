#include <algorithm>
#include <cmath>
#include <sstream>

#include "aqs/dynamics.hpp"
#include "aqs/errors.hpp"
#include "aqs/rates.hpp"

namespace aqs {

MarkovianLimitResult markovian_limit_check(const GaussianBath& bath, double static_alpha,
                                           const MarkovianLimitOptions& options) {
    if (!(static_alpha > 0.0)) throw ConfigError("alpha: frozen gap must be positive");
    if (!(bath.sigma > 0.0)) throw ConfigError("sigma: kernel width must be positive");
    if (!(bath.weight >= 0.0)) throw ConfigError("weight: must be >= 0");

    // Eigenbasis aligned with the coupling operator: A = sigma_z, so the
    // dissipator reduces to pure dephasing at rate 4 Re Gamma_00 = 2 weight.
    MarkovianLimitResult out;
    out.analytic_rate = 2.0 * bath.weight;

    FrameSnapshot f;
    f.s = 1.0;
    f.delta = static_alpha;
    f.omega = 0.0;
    f.alpha = static_alpha;
    f.c = -1.0;
    f.s_trig = 0.0;
    f.theta = 0.5 * std::atan2(0.0, -1.0);
    f.e0 = 0.5 - 0.5 * static_alpha;
    f.e1 = 0.5 + 0.5 * static_alpha;

    double T = options.duration;
    if (!(T > 0.0)) {
        T = 40.0 * bath.sigma;
        if (out.analytic_rate > 0.0) T = std::max(T, 3.0 / out.analytic_rate);
    }
    IntegratorConfig cfg;
    cfg.samples = 401;
    cfg.h = options.step > 0.0 ? options.step : std::min({bath.sigma / 10.0, 0.1 / std::max(1.0, static_alpha), T / 1000.0});
    cfg.tail_tol = 0.0;

    const DensityState plus{0.5, cplx{0.5, 0.0}};
    const Trajectory traj = integrate_frozen(f, bath, RateMode::Complex, plus, T, cfg);

    // least-squares slope of log|rho01| past the kernel transient
    const double t_start = std::min(8.0 * bath.sigma, 0.5 * T);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    std::vector<std::pair<double, double>> pts;
    for (const auto& smp : traj.samples) {
        if (smp.t < t_start) continue;
        const double mag = std::abs(smp.state.rho01);
        if (!(mag > 0.0)) throw NumericalError("markovian_limit_check: coherence vanished, cannot fit");
        const double y = std::log(mag);
        pts.emplace_back(smp.t, y);
        sx += smp.t;
        sy += y;
        sxx += smp.t * smp.t;
        sxy += smp.t * y;
        ++n;
    }
    if (n < 3) throw NumericalError("markovian_limit_check: too few samples to fit");
    const double dn = static_cast<double>(n);
    const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    const double icept = (sy - slope * sx) / dn;
    double ss = 0.0;
    for (const auto& [t, y] : pts) {
        const double r = y - (icept + slope * t);
        ss += r * r;
    }
    out.fitted_rate = -slope;
    out.fit_residual = std::sqrt(ss / dn);
    if (out.fit_residual > options.residual_max) {
        std::ostringstream os;
        os << "markovian_limit_check: non-exponential decay (rms residual " << out.fit_residual << ")";
        throw NumericalError(os.str());
    }
    return out;
}

} // namespace aqs
