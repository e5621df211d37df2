#pragma once

#include <string>

#include "pbs/config.hpp"

namespace pbs::runner {

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 config error, 3 numerical-invariant failure
    std::vector<std::string> files_written;
    std::string error;
};

// Dispatch a validated config to its scenario pipeline and write CSV artifacts
// under cfg.output_path. Deterministic byte-for-byte given (config, seed).
RunResult run_scenario(const config::RunConfig& cfg, int threads = 0);

// effective worker count: explicit > env PHONON_BS_THREADS > hardware
int resolve_threads(int requested);

}  // namespace pbs::runner
