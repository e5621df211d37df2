#include "pbs/trajectories.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "hierarchy_engine.hpp"

namespace pbs::trajectories {

using fock_master::Engine;
using fock_master::Frame;
using fock_master::GenMode;
using fock_master::kLevels;
using fock_master::level_index;
using fock_master::Scenario;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return double(splitmix64(state) >> 11) * 0x1.0p-53;
}

ConditionalHierarchy init_conditional(const SystemParams& p_in, double beta, double tau,
                                      const TrajectoryOptions& opts) {
    SystemParams p = p_in;
    p.tau = tau;
    Frame frame = opts.frame;
    ModeDims dims{3, 3, 2};
    if (beta > 0.0) {
        p.beta = beta;
        p.g = p.gbar / beta;
        dims.dm = opts.mech_dim_displaced;
    } else if (frame == Frame::Displaced) {
        p.beta = 0.0;
        p.g = 0.0;
        dims.dm = 1;
    } else {
        p.beta = 0.0;
        p.g = p.gbar;
        dims.dm = 3;
    }
    const Ket mech = Ket::Unit(dims.dm, 0);
    auto [h, c] = fock_master::init_hierarchy(Scenario::hom(), p, dims, mech, frame);
    (void)c;
    return ConditionalHierarchy{std::move(h), {}, true};
}

void no_jump_step(ConditionalHierarchy& ch, double dt) {
    Engine::Workspace ws;
    const double tr_before = ch.h.op(1, 1, 1, 1).trace().real();
    ch.h.engine->rk4_step(ch.h.ops, ch.h.t, dt, GenMode::NoJump, ws);
    ch.h.t += dt;
    const double tr_after = ch.h.op(1, 1, 1, 1).trace().real();
    if (tr_after > tr_before + 1e-10)
        throw NumericalError("no_jump_step: top-level trace increased (generator sign error)");
    ch.normalized = false;
}

StepProbabilities vacuum_probability(const ConditionalHierarchy& ch, double dt) {
    const double r1 = ch.h.engine->jump_rate(ch.h.ops, ch.h.t, 1);
    const double r2 = ch.h.engine->jump_rate(ch.h.ops, ch.h.t, 2);
    const double p1 = r1 * dt, p2 = r2 * dt;
    const double p0 = 1.0 - p1 - p2;
    if (p0 < -1e-9 || p0 > 1.0 + 1e-9)
        throw NumericalError("vacuum_probability: step size too large for first-order jump probabilities");
    return {p0, p1, p2};
}

void jump_update(ConditionalHierarchy& ch, int detector, double dt) {
    if (detector != 1 && detector != 2)
        throw InvalidArgument("jump_update: detector must be 1 or 2");
    const double rate = ch.h.engine->jump_rate(ch.h.ops, ch.h.t, detector);
    if (rate * dt <= 0.0)
        throw InvalidArgument("jump_update: requested jump has zero probability");
    Engine::Levels updated;
    ch.h.engine->jump_superop(ch.h.ops, ch.h.t, detector, updated);
    const double tr = updated[level_index(1, 1, 1, 1)].trace().real();
    for (int l = 0; l < kLevels; ++l) ch.h.ops[l] = updated[l] / tr;
    ch.jumps.emplace_back(ch.h.t, detector);
    ch.normalized = true;
}

namespace {

// shared trajectory core with an externally provided workspace (hot loop)
TrajectoryRecord run_trajectory_impl(const SystemParams& p, double beta, double tau,
                                     std::uint64_t seed, const TrajectoryOptions& opts,
                                     Engine::Workspace& ws) {
    ConditionalHierarchy ch = init_conditional(p, beta, tau, opts);
    TrajectoryRecord rec;
    rec.seed = seed;
    std::uint64_t rng = seed;
    const int top = level_index(1, 1, 1, 1);
    while (int(rec.jumps.size()) < 2) {
        if (ch.h.t > opts.t_max) {
            std::ostringstream os;
            os << "trajectory not terminated by t=" << opts.t_max
               << " (detection probability leak?)";
            throw NumericalError(os.str());
        }
        const double r1 = ch.h.engine->jump_rate(ch.h.ops, ch.h.t, 1);
        const double r2 = ch.h.engine->jump_rate(ch.h.ops, ch.h.t, 2);
        const double p1 = r1 * opts.dt, p2 = r2 * opts.dt;
        const double rand = uniform01(rng);
        if (rand < 1.0 - p1 - p2) {
            ch.h.engine->rk4_step(ch.h.ops, ch.h.t, opts.dt, GenMode::NoJump, ws);
            ch.h.t += opts.dt;
            const double tr = ch.h.ops[top].trace().real();
            for (int l = 0; l < kLevels; ++l) ch.h.ops[l] /= tr;
        } else {
            const double rand_j = uniform01(rng);
            const int det = rand_j < p1 / (p1 + p2) ? 1 : 2;
            Engine::Levels updated;
            ch.h.engine->jump_superop(ch.h.ops, ch.h.t, det, updated);
            const double tr = updated[top].trace().real();
            for (int l = 0; l < kLevels; ++l) ch.h.ops[l] = updated[l] / tr;
            rec.jumps.emplace_back(ch.h.t, det);
            ch.h.t += opts.dt;
        }
    }
    const int d1 = rec.jumps[0].second, d2 = rec.jumps[1].second;
    rec.outcome = d1 != d2 ? Outcome::Coincidence
                           : (d1 == 1 ? Outcome::BunchedAtD1 : Outcome::BunchedAtD2);
    return rec;
}

}  // namespace

TrajectoryRecord run_trajectory(const SystemParams& p, double beta, double tau,
                                std::uint64_t seed, const TrajectoryOptions& opts) {
    Engine::Workspace ws;
    return run_trajectory_impl(p, beta, tau, seed, opts, ws);
}

G2Estimate estimate_g2(const SystemParams& p, double beta, double tau, int n_traj,
                       std::uint64_t master_seed, int threads, const TrajectoryOptions& opts) {
    if (n_traj < 1) throw InvalidArgument("estimate_g2: n_traj must be >= 1");
    threads = std::max(1, threads);

    auto seed_for = [master_seed](int index) {
        std::uint64_t s = master_seed;
        std::uint64_t mixed = splitmix64(s);
        std::uint64_t t = mixed ^ (0x9e3779b97f4a7c15ull * std::uint64_t(index + 1));
        return splitmix64(t);
    };

    std::vector<char> coincident(n_traj, 0);
    auto worker = [&](int begin, int end) {
        Engine::Workspace ws;
        for (int i = begin; i < end; ++i) {
            TrajectoryRecord rec = run_trajectory_impl(p, beta, tau, seed_for(i), opts, ws);
            coincident[i] = rec.outcome == Outcome::Coincidence ? 1 : 0;
        }
    };
    if (threads == 1) {
        worker(0, n_traj);
    } else {
        std::vector<std::future<void>> futs;
        const int chunk = (n_traj + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int b = t * chunk, e = std::min(n_traj, b + chunk);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, worker, b, e));
        }
        for (auto& f : futs) f.get();
    }
    int count = 0;
    for (char c : coincident) count += c;
    G2Estimate est;
    est.tau = tau;
    est.n_traj = n_traj;
    est.p_hat = double(count) / double(n_traj);
    est.half_width = 2.0 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(n_traj));
    return est;
}

DeterministicG2 g2_deterministic(const SystemParams& p, double beta, double tau,
                                 const TrajectoryOptions& opts) {
    const int top = level_index(1, 1, 1, 1);
    double vac[2];
    for (int which = 0; which < 2; ++which) {
        ConditionalHierarchy ch = init_conditional(p, beta, tau, opts);
        Engine::Workspace ws;
        const GenMode mode = which == 0 ? GenMode::NoD1 : GenMode::NoD2;
        const double t_end = opts.t_max + std::abs(tau);
        while (ch.h.t < t_end - 1e-12) {
            ch.h.engine->rk4_step(ch.h.ops, ch.h.t, opts.dt, mode, ws);
            ch.h.t += opts.dt;
        }
        vac[which] = ch.h.ops[top].trace().real();
    }

    // unconditional run for the flux normalization
    ConditionalHierarchy ch = init_conditional(p, beta, tau, opts);
    Engine::Workspace ws;
    double f1 = 0.0, f2 = 0.0;
    const auto c = fock_master::hom_coeffs();
    const double t_end = opts.t_max + std::abs(tau);
    // trapezoid accumulation of both detector fluxes
    double prev1 = fock_master::detector_flux(ch.h, c, 1);
    double prev2 = fock_master::detector_flux(ch.h, c, 2);
    while (ch.h.t < t_end - 1e-12) {
        ch.h.engine->rk4_step(ch.h.ops, ch.h.t, opts.dt, GenMode::Unconditional, ws);
        ch.h.t += opts.dt;
        const double cur1 = fock_master::detector_flux(ch.h, c, 1);
        const double cur2 = fock_master::detector_flux(ch.h, c, 2);
        f1 += 0.5 * opts.dt * (prev1 + cur1);
        f2 += 0.5 * opts.dt * (prev2 + cur2);
        prev1 = cur1;
        prev2 = cur2;
    }

    DeterministicG2 out;
    out.coincidence_probability = 1.0 - vac[0] - vac[1];
    out.flux1_integral = f1;
    out.flux2_integral = f2;
    out.normalized = out.coincidence_probability / (f1 * f2);
    return out;
}

}  // namespace pbs::trajectories
