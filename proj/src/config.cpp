#include "pbs/config.hpp"

#include <set>

#include <json.hpp>

namespace pbs::config {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "scenario",   "g",          "gbar",        "beta",        "kappa",         "kappa1",
    "kappa2",     "gamma",      "tau",         "omega1",      "omega2",        "omega_m",
    "beta_list",  "phi_grid",   "tau_grid",    "n_traj",      "master_seed",   "dt",
    "t_end",      "detection_time", "mech_dim", "output_path", "pulse_duration",
    "drive_epsilon", "pulse_area"};

double positive(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("config: field '" + key + "' must be a number");
    const double v = j.get<double>();
    if (v <= 0) throw ConfigError("config: field '" + key + "' must be positive");
    return v;
}

double nonnegative(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("config: field '" + key + "' must be a number");
    const double v = j.get<double>();
    if (v < 0) throw ConfigError("config: field '" + key + "' must be >= 0");
    return v;
}

std::vector<double> number_list(const json& j, const std::string& key) {
    if (!j.is_array() || j.empty())
        throw ConfigError("config: field '" + key + "' must be a nonempty array");
    std::vector<double> out;
    for (const auto& e : j) {
        if (!e.is_number()) throw ConfigError("config: field '" + key + "' must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

std::string scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::MzSweep: return "mz-sweep";
        case ScenarioKind::HomDip: return "hom-dip";
        case ScenarioKind::HomMc: return "hom-mc";
        case ScenarioKind::ControlCurves: return "control-curves";
        default: return "memory-prep";
    }
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKnownKeys.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "'");

    RunConfig cfg{};
    if (!j.contains("scenario")) throw ConfigError("config: 'scenario' is required");
    const std::string sc = j["scenario"].get<std::string>();
    if (sc == "mz-sweep") cfg.scenario = ScenarioKind::MzSweep;
    else if (sc == "hom-dip") cfg.scenario = ScenarioKind::HomDip;
    else if (sc == "hom-mc") cfg.scenario = ScenarioKind::HomMc;
    else if (sc == "control-curves") cfg.scenario = ScenarioKind::ControlCurves;
    else if (sc == "memory-prep") cfg.scenario = ScenarioKind::MemoryPrep;
    else throw ConfigError("config: unknown scenario '" + sc + "'");

    // workhorse defaults
    cfg.params.kappa1 = cfg.params.kappa2 = 1.0;
    cfg.params.gamma = 1.0;
    cfg.params.gbar = 1.0 / 3.0;
    cfg.params.g = 0.0;

    if (j.contains("kappa")) cfg.params.kappa1 = cfg.params.kappa2 = positive(j["kappa"], "kappa");
    if (j.contains("kappa1")) cfg.params.kappa1 = positive(j["kappa1"], "kappa1");
    if (j.contains("kappa2")) cfg.params.kappa2 = positive(j["kappa2"], "kappa2");
    if (j.contains("gamma")) cfg.params.gamma = positive(j["gamma"], "gamma");
    if (j.contains("gbar")) cfg.params.gbar = nonnegative(j["gbar"], "gbar");
    if (j.contains("g")) cfg.params.g = nonnegative(j["g"], "g");
    if (j.contains("beta")) cfg.params.beta = j["beta"].get<double>();
    if (j.contains("tau")) cfg.params.tau = j["tau"].get<double>();
    if (j.contains("omega1")) cfg.params.omega1 = j["omega1"].get<double>();
    if (j.contains("omega2")) cfg.params.omega2 = j["omega2"].get<double>();
    if (j.contains("omega_m")) cfg.params.omega_m = j["omega_m"].get<double>();

    if (j.contains("beta_list")) cfg.beta_list = number_list(j["beta_list"], "beta_list");
    if (j.contains("phi_grid")) cfg.phi_grid = number_list(j["phi_grid"], "phi_grid");
    if (j.contains("tau_grid")) cfg.tau_grid = number_list(j["tau_grid"], "tau_grid");

    if (j.contains("n_traj")) {
        if (!j["n_traj"].is_number_integer() || j["n_traj"].get<long long>() < 1)
            throw ConfigError("config: field 'n_traj' must be an integer >= 1");
        cfg.n_traj = int(j["n_traj"].get<long long>());
    }
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("dt")) cfg.dt = positive(j["dt"], "dt");
    if (j.contains("t_end")) cfg.t_end = positive(j["t_end"], "t_end");
    if (j.contains("detection_time")) cfg.detection_time = positive(j["detection_time"], "detection_time");
    if (j.contains("mech_dim")) {
        if (!j["mech_dim"].is_number_integer() || j["mech_dim"].get<long long>() < 2)
            throw ConfigError("config: field 'mech_dim' must be an integer >= 2");
        cfg.mech_dim = int(j["mech_dim"].get<long long>());
    }
    if (j.contains("output_path")) cfg.output_path = j["output_path"].get<std::string>();
    if (j.contains("pulse_duration")) cfg.pulse_duration = positive(j["pulse_duration"], "pulse_duration");
    if (j.contains("drive_epsilon")) cfg.drive_epsilon = positive(j["drive_epsilon"], "drive_epsilon");
    if (j.contains("pulse_area")) cfg.pulse_area = positive(j["pulse_area"], "pulse_area");

    for (double b : cfg.beta_list)
        if (b < 0) throw ConfigError("config: field 'beta_list' must be >= 0");

    try {
        cfg.params.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

}  // namespace pbs::config
