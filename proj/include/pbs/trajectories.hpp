#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pbs/fock_master.hpp"

// Conditional stochastic Fock-state master equation and the two-jump Monte-Carlo
// estimator for Hong-Ou-Mandel statistics. Between detections the hierarchy
// evolves under the trace-decreasing no-jump generator; a detection applies the
// corresponding jump superoperator and renormalizes.

namespace pbs::trajectories {

using fock_master::FockHierarchy;

struct ConditionalHierarchy {
    FockHierarchy h;
    std::vector<std::pair<double, int>> jumps;  // (time, detector)
    bool normalized = true;
};

enum class Outcome { Coincidence, BunchedAtD1, BunchedAtD2 };

struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<std::pair<double, int>> jumps;
    Outcome outcome = Outcome::Coincidence;
};

struct G2Estimate {
    double tau = 0.0;
    int n_traj = 0;
    double p_hat = 0.0;
    double half_width = 0.0;  // 2 sigma of a Bernoulli estimate
};

struct TrajectoryOptions {
    double dt = 2e-3;
    double t_max = 60.0;           // runaway guard
    int mech_dim_displaced = 12;
    fock_master::Frame frame = fock_master::Frame::Displaced;
};

// HOM conditional hierarchy at t = 0 (photons injected, cavities empty).
ConditionalHierarchy init_conditional(const SystemParams& p, double beta, double tau,
                                      const TrajectoryOptions& opts = {});

// One un-normalized no-jump RK4 step; fails fast if the top-level trace increases.
void no_jump_step(ConditionalHierarchy& ch, double dt);

// P(no detection in (t, t+dt]) = 1 - P(D1) - P(D2), built from the unambiguous
// one-count probabilities; the complementary rates are returned alongside.
struct StepProbabilities {
    double p_vacuum, p_d1, p_d2;
};
StepProbabilities vacuum_probability(const ConditionalHierarchy& ch, double dt);

// Apply the detector jump update and renormalize; records the event.
void jump_update(ConditionalHierarchy& ch, int detector, double dt);

// Deterministic two-jump trajectory for a given seed (splitmix64 stream).
TrajectoryRecord run_trajectory(const SystemParams& p, double beta, double tau,
                                std::uint64_t seed, const TrajectoryOptions& opts = {});

// Coincidence fraction over n_traj trajectories; per-trajectory seeds are
// splitmix64(master_seed ^ mix(index)), so the estimate is independent of
// execution order and worker count.
G2Estimate estimate_g2(const SystemParams& p, double beta, double tau, int n_traj,
                       std::uint64_t master_seed, int threads = 1,
                       const TrajectoryOptions& opts = {});

// Deterministic coincidence probability 1 - P(no D1 count) - P(no D2 count),
// each term from a vacuum-conditioned evolution with the other detector
// unobserved. `normalized` divides by the product of integrated output fluxes.
struct DeterministicG2 {
    double coincidence_probability;
    double flux1_integral, flux2_integral;
    double normalized;
};
DeterministicG2 g2_deterministic(const SystemParams& p, double beta, double tau,
                                 const TrajectoryOptions& opts = {});

// splitmix64: the documented seed-mixing primitive behind per-trajectory streams.
std::uint64_t splitmix64(std::uint64_t& state);
double uniform01(std::uint64_t& state);

}  // namespace pbs::trajectories
