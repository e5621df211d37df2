#pragma once

#include <functional>
#include <vector>

#include "pbs/types.hpp"

// Raman-memory preparation of the mechanical controller: the write pulse swaps a
// steady-state cavity coherent amplitude into the mechanics through the
// beam-splitter-like interaction enabled by a strong read/write drive. The
// adiabatic master equation adds the correlated-jump channel at rate
// Gamma = 4 g^2 / kappa1.

namespace pbs::memory_prep {

struct MemoryPrepParams {
    double g = 0.1;        // bare optomechanical coupling
    double kappa1 = 1.0;   // R/W cavity damping
    double kappa2 = 0.0;   // memory-port cavity damping
    double T = 1.0;        // R/W pulse duration
    double pulse_area = 0.0;     // A = integral of alpha(t) dt
    cplx alpha0 = 0.0;     // steady-state cavity-2 amplitude, -2 i eps / kappa2

    double Gamma() const { return 4.0 * g * g / kappa1; }
    double g_tilde() const { return g * pulse_area; }
};

// alpha = 2 E / sqrt(kappa1): the R/W intracavity amplitude slaved to the drive.
cplx adiabatic_amplitude(cplx E, double kappa1);

// e^{-i (g_tilde theta) (a^dag b + a b^dag)} applied to |alpha0>_2 (x) |0>_b on a
// (cavity-2 x mechanics) space with the given per-mode dims.
Ket swap_final_state(cplx alpha0, double g_tilde_theta, int d2, int dm);

struct MemoryEvolveResult {
    DensityOp rho;                 // final (cavity-2 x mechanics) state
    std::vector<double> times;
    std::vector<double> fidelity;  // against |0>_2 (x) |-i alpha0>_b
    std::vector<double> trace;
};

// RK4 integration of
//   drho/dt = -i g [a b^dag alpha*(t) + a^dag b alpha(t), rho]
//             + Gamma D[a b^dag] rho + kappa2 D[a] rho
// with alpha(t) given as a time profile over [0, t_end]. The default square
// profile has alpha(t) = pulse_area / T on [0, T].
MemoryEvolveResult memory_me_evolve(const MemoryPrepParams& p,
                                    const std::function<cplx(double)>& alpha_t, double t_end,
                                    double dt, int d2, int dm, int sample_stride = 10);

// Square-profile convenience wrapper covering exactly the pulse window.
MemoryEvolveResult memory_me_evolve_square(const MemoryPrepParams& p, double dt, int d2, int dm);

struct MemoryCondition {
    bool satisfied;
    double margin;  // gA / (Gamma T); "much greater" read as >= 10
};
MemoryCondition memory_condition(const MemoryPrepParams& p);

}  // namespace pbs::memory_prep
