#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbs/params.hpp"
#include "pbs/types.hpp"

namespace pbs::config {

struct ConfigError : Error {
    using Error::Error;
};

enum class ScenarioKind { MzSweep, HomDip, HomMc, ControlCurves, MemoryPrep };

struct RunConfig {
    ScenarioKind scenario;
    SystemParams params;          // defaults kappa = gamma = 1, gbar = 1/3
    std::vector<double> beta_list;
    std::vector<double> phi_grid;
    std::vector<double> tau_grid;
    int n_traj = 400;
    std::uint64_t master_seed = 1;
    double dt = 2e-3;
    double t_end = 0.0;           // 0 = scenario default
    double detection_time = 4.7;  // hom-dip fixed detection time (in 1/kappa)
    int mech_dim = 12;            // displaced-frame mechanical truncation
    std::string output_path = ".";
    // memory-prep extras
    double pulse_duration = 1.0;
    double drive_epsilon = 0.25;
    double pulse_area = 0.0;      // 0 = pick gA = pi/2
};

// Parse + validate a JSON document; unknown keys are rejected, invalid values
// name the offending field.
RunConfig parse_config(const std::string& json_text);

std::string scenario_name(ScenarioKind k);

}  // namespace pbs::config
