// csv.hpp: writers for trajectories, sweeps and the closed-system tables

#pragma once

#include <iosfwd>
#include <vector>

#include "aqs/dynamics.hpp"
#include "aqs/experiments.hpp"
#include "aqs/format.hpp"

namespace aqs {

// t, s, alpha, p0, rho_x, rho_y, rho_z, purity
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

// t, alpha and the three complex rates of every recorded sample.
void write_rates_csv(const Trajectory& traj, std::ostream& os);

void write_sweep_csv(const SweepResult& result, std::ostream& os);

// One row per s ("gap" rows) followed by the (s, omega) background grid
// ("spectrum" rows); unused columns are nan.
void write_gapmap_csv(const GapMap& map, const Metadata& md, std::ostream& os);
void write_golden_rule_csv(const std::vector<GoldenRuleRow>& rows, const Metadata& md, std::ostream& os);

} // namespace aqs
