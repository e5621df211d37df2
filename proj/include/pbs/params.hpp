#pragma once

#include <cmath>
#include <optional>

#include "pbs/types.hpp"

namespace pbs {

// Physical rates for the open-system layers. Everything is expressed in units of a
// reference rate (kappa by default in the runner defaults).
struct SystemParams {
    double g = 0.0;        // bare trilinear coupling
    double gbar = 1.0 / 3; // effective coupling g*beta
    double beta = 0.0;     // mechanical coherent amplitude (real by convention)
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double gamma = 1.0;    // single-photon bandwidth
    double tau = 0.0;      // inter-photon delay
    // optional carrier metadata; only checked for the resonance condition
    std::optional<double> omega1, omega2, omega_m;

    void validate() const {
        if (kappa1 <= 0 || kappa2 <= 0 || gamma <= 0)
            throw InvalidArgument("SystemParams: rates must be positive");
        if (g < 0 || gbar < 0) throw InvalidArgument("SystemParams: couplings must be >= 0");
        if (g > 0 && beta > 0 && std::abs(gbar - g * beta) > 1e-9 * std::max(1.0, gbar))
            throw InvalidArgument("SystemParams: gbar must equal g*|beta| when both are set");
        if (omega1 && omega2 && omega_m) {
            const double lhs = *omega2, rhs = *omega1 + *omega_m;
            if (std::abs(lhs - rhs) > 1e-9 * std::max(std::abs(lhs), std::abs(rhs)))
                throw InvalidArgument("SystemParams: carrier resonance omega2 = omega1 + omega_m violated");
        }
    }

    bool symmetric_kappa() const {
        return std::abs(kappa1 - kappa2) <= 1e-12 * std::max(kappa1, kappa2);
    }
};

// Decaying-exponential single-photon envelope xi(t) = sqrt(gamma) e^{-gamma (t-t0)/2}, t >= t0.
struct PulseShape {
    double gamma = 1.0;
    double offset = 0.0;

    double operator()(double t) const {
        return t >= offset ? std::sqrt(gamma) * std::exp(-gamma * (t - offset) / 2.0) : 0.0;
    }
};

}  // namespace pbs
