#include "aqs/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace aqs {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void CsvWriter::metadata(const Metadata& md) {
    for (const auto& [k, v] : md) comment(k, v);
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
    os_ << "# " << key << '=' << value << '\n';
}

void CsvWriter::header(std::initializer_list<const char*> columns) {
    for (const char* c : columns) *this << c;
    end_row();
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (const auto& c : columns) *this << c;
    end_row();
}

void CsvWriter::sep() {
    if (!first_) os_ << ',';
    first_ = false;
}

CsvWriter& CsvWriter::operator<<(double x) {
    sep();
    os_ << format_double(x);
    return *this;
}

CsvWriter& CsvWriter::operator<<(int x) {
    sep();
    os_ << x;
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t x) {
    sep();
    os_ << x;
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& x) {
    sep();
    // fields never contain separators except free-text error messages
    if (x.find_first_of(",\"\n") != std::string::npos) {
        os_ << '"';
        for (char c : x) {
            if (c == '"') os_ << '"';
            os_ << (c == '\n' ? ' ' : c);
        }
        os_ << '"';
    } else {
        os_ << x;
    }
    return *this;
}

void CsvWriter::end_row() {
    os_ << '\n';
    first_ = true;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    CsvWriter w(os);
    w.metadata(traj.metadata);
    w.header({"t", "s", "alpha", "p0", "rho_x", "rho_y", "rho_z", "purity"});
    for (const auto& smp : traj.samples) {
        const BlochVector b = smp.state.bloch();
        w << smp.t << smp.frame.s << smp.frame.alpha << smp.state.p0 << b.x << b.y << b.z
          << smp.state.purity();
        w.end_row();
    }
}

void write_rates_csv(const Trajectory& traj, std::ostream& os) {
    CsvWriter w(os);
    w.metadata(traj.metadata);
    w.header({"t", "alpha", "re_g00", "im_g00", "re_g01", "im_g01", "re_g10", "im_g10"});
    for (const auto& smp : traj.samples) {
        if (!smp.rates) continue;
        const RateSet& r = *smp.rates;
        w << smp.t << r.alpha << r.g00.real() << r.g00.imag() << r.g01.real() << r.g01.imag()
          << r.g10.real() << r.g10.imag();
        w.end_row();
    }
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
    CsvWriter w(os);
    w.metadata(result.metadata);
    w.header({result.axis_name.c_str(), "T", "T_over_Tmax", "mode", "eta", "delta_L", "success",
              "max_bloch_norm", "min_eigenvalue", "flagged", "positivity_violated", "h", "steps",
              "error"});
    for (const auto& r : result.rows) {
        const auto& d = r.diagnostics;
        w << r.axis << r.T << r.t_over_tmax << r.mode << r.eta << r.deltaL << r.success
          << d.max_bloch_norm << d.min_eigenvalue << d.flagged << d.positivity_violated << d.step
          << d.steps << r.error;
        w.end_row();
    }
}

void write_gapmap_csv(const GapMap& map, const Metadata& md, std::ostream& os) {
    const double nan = std::nan("");
    CsvWriter w(os);
    w.metadata(md);
    w.header({"kind", "s", "E1_minus_E0", "E2_minus_E1", "E2_minus_E0", "omega", "J"});
    for (const auto& g : map.gaps) {
        w << "gap" << g.s << g.e10 << g.e21 << g.e20 << nan << nan;
        w.end_row();
    }
    for (const auto& c : map.background) {
        w << "spectrum" << c.s << nan << nan << nan << c.omega << c.J;
        w.end_row();
    }
}

void write_golden_rule_csv(const std::vector<GoldenRuleRow>& rows, const Metadata& md, std::ostream& os) {
    CsvWriter w(os);
    w.metadata(md);
    w.comment("note", "J at the transition frequency only; interaction matrix elements not included");
    w.header({"s", "omega_01", "omega_12", "omega_02", "J_01", "J_12", "J_02"});
    for (const auto& r : rows) {
        w << r.s << r.w01 << r.w12 << r.w02 << r.J01 << r.J12 << r.J02;
        w.end_row();
    }
}

} // namespace aqs
