#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pbs/config.hpp"
#include "pbs/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"phonon-bs: mechanically controlled beam-splitter experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;

    const std::vector<std::string> names = {"mz-sweep", "hom-dip", "hom-mc", "control-curves",
                                            "memory-prep"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "master seed (overrides config)")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--threads", threads, "worker threads (0 = auto)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string scenario = app.get_subcommands().front()->get_name();

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file: " << config_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    pbs::config::RunConfig cfg;
    try {
        cfg = pbs::config::parse_config(buf.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (pbs::config::scenario_name(cfg.scenario) != scenario) {
        std::cerr << "error: config scenario '" << pbs::config::scenario_name(cfg.scenario)
                  << "' does not match subcommand '" << scenario << "'\n";
        return 2;
    }
    if (seed_set) cfg.master_seed = seed;
    if (!out_dir.empty()) cfg.output_path = out_dir;

    const auto res = pbs::runner::run_scenario(cfg, threads);
    if (res.exit_code != 0) {
        std::cerr << "error: " << res.error << "\n";
        return res.exit_code;
    }
    for (const auto& f : res.files_written) std::cout << f << "\n";
    return 0;
}
