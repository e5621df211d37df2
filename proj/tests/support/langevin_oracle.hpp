#pragma once

#include <vector>

#include "pbs/params.hpp"

// Test-side oracle: single-photon output amplitudes of the symmetric two-cavity
// beam splitter, built by direct quadrature of the Langevin propagator
// (A, B, C, D coefficient functions) against decaying-exponential pulses.
// Independent of every closed form it is used to check.

namespace pbs::test_oracle {

struct LangevinAmplitudes {
    // p[i][j](t_k): amplitude for the photon injected at port j to exit port i
    std::vector<double> t;
    std::vector<cplx> p11, p12, p21, p22;
    double h = 0.0;
};

// tau >= 0 delays the port-2 pulse; tau < 0 delays the port-1 pulse. The grid is
// aligned so the pulse front sits exactly on a node (keeps the trapezoid second
// order through the kink).
LangevinAmplitudes langevin_amplitudes(const SystemParams& p, double tau, double t_max = 60.0,
                                       int n = 120001);

struct G2Quadrature {
    double numerator;      // two-time joint-detection integral
    double flux1, flux2;   // integrated single-detector fluxes
    double g2;             // numerator / (flux1 * flux2)
};

G2Quadrature g2_quadrature(const SystemParams& p, double tau, double t_max = 60.0,
                           int n = 120001);

// integrated upper-detector probability of the MZ interferometer
double mz_pu_quadrature(double phi, const SystemParams& p, double t_max = 60.0, int n = 120001);

// integrated transmission / reflection for a single photon into port 1
std::pair<double, double> transmission_quadrature(const SystemParams& p, double t_max = 60.0,
                                                  int n = 120001);

}  // namespace pbs::test_oracle
