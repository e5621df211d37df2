#pragma once

#include <array>
#include <vector>

#include "pbs/fock_master.hpp"
#include "pbs/ladder_ops.hpp"

// Generator machinery behind the hierarchy equations. One Engine instance is
// immutable after construction and shared by the unconditional integrator, the
// no-jump (conditional) evolution and the jump updates.

namespace pbs::fock_master {

enum class GenMode {
    Unconditional,  // full master equation
    NoJump,         // vacuum detection at both detectors
    NoD1,           // detector 1 silent, detector 2 unobserved
    NoD2,
};

class Engine {
public:
    Engine(const ModeDims& dims, const SystemParams& p, Frame frame, PulseShape xi,
           PulseShape eta);

    using Levels = std::array<DensityOp, kLevels>;

    void rhs(const Levels& r, double t, GenMode mode, Levels& out) const;

    // full jump superoperator J_det applied to all levels (the dt-stripped update)
    void jump_superop(const Levels& r, double t, int detector, Levels& out) const;

    // tr[ J_det (top level) ]: photodetection rate used for jump decisions
    double jump_rate(const Levels& r, double t, int detector) const;

    // per-level output-flux ingredients for detector `mode`
    std::array<cplx, kLevels> flux_ingredients(const Levels& r, double t, int mode) const;

    double coincidence_rate(const Levels& r) const;

    // RK4 step in place (workspace reused across steps)
    struct Workspace {
        Levels k, acc, tmp;
        bool ready = false;
    };
    void rk4_step(Levels& r, double t, double dt, GenMode mode, Workspace& ws) const;

    double xi(double t) const { return xi_(t); }
    double eta(double t) const { return eta_(t); }
    const ModeDims& dims() const { return dims_; }

private:
    ModeDims dims_;
    PulseShape xi_, eta_;
    double k1_, k2_, sqk1_, sqk2_;
    std::vector<std::pair<double, LadderOp>> hterms_;  // Hermitian pairs included explicitly
    LadderOp a1_, a2_, a1d_, a2d_;
    Eigen::VectorXd damp_;          // (k1 n1 + k2 n2)/2
    Eigen::VectorXd n1_, n2_, n12_; // occupation diagonals
};

}  // namespace pbs::fock_master
