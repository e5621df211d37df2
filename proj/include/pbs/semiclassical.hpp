#pragma once

#include "pbs/params.hpp"
#include "pbs/types.hpp"

// Closed-form analytics for the open two-cavity beam splitter driven by
// decaying-exponential single-photon pulses: the oracle layer the numerical
// engines are validated against. All formulas assume kappa1 = kappa2 and use
// the output convention a_out = sqrt(kappa) a - a_in.

namespace pbs::semiclassical {

struct PropagatorCoeffs {
    cplx A, B, C, D;
};

// A = e^{-kt/2} cos(gbar t), B = -i e^{-kt/2} sin(gbar t),
// C = e^{+kt/2} cos(gbar t), D = +i e^{+kt/2} sin(gbar t);  A*C - B*D = 1.
PropagatorCoeffs propagator_coeffs(double t, const SystemParams& p);

struct TransmissionReflection {
    double T, R;
};

// T = 8 k gbar^2 (gamma + 2k) / [(4 gbar^2 + k^2)(4 gbar^2 + (gamma+k)^2)], R = 1 - T.
TransmissionReflection transmission_reflection(const SystemParams& p);

// Upper-detector probability of the MZ interferometer versus the arm phase.
double mz_pu(double phi, const SystemParams& p);

// |8 k gbar (4 gbar^2 - k(k+gamma))| / [(4 gbar^2 + k^2)(4 gbar^2 + (k+gamma)^2)].
double mz_visibility(const SystemParams& p);

// Joint detection probability for two single photons with relative delay dtau
// (negative delays map to |dtau|; the semiclassical dip is symmetric). Closed
// form with exponential rates gamma, kappa and (kappa+gamma)/2; validated
// against the two-time quadrature of the output correlators in the tests.
double hom_g2(double dtau, const SystemParams& p);

// Large-delay limit of hom_g2 (equals R^2 + T^2).
double hom_g2_limit(const SystemParams& p);

// (G2(inf) - G2(0)) / (G2(inf) + G2(0)).
double hom_visibility(const SystemParams& p);

}  // namespace pbs::semiclassical
