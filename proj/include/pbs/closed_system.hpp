#pragma once

#include <vector>

#include "pbs/hilbert.hpp"
#include "pbs/types.hpp"

// Single-frequency unitary model: Schwinger SU(2) structure, the trilinear
// interaction, controller branch states and their overlap (decoherence) matrix,
// and the second-order dephasing map of the semiclassical limit.

namespace pbs::closed_system {

// Generators on the two-cavity optical space with d1 = d2 = N+1.
// |s,m>_z = |s-m>_1 (x) |s+m>_2 with s = N/2; Sz = (n2 - n1)/2.
struct SU2Ops {
    int N;
    CMatrix Sx, Sy, Sz, Sp, Sm;
};
SU2Ops su2_generators(int N);

// g (a1^dag a2 b^dag + a1 a2^dag b) on the composite space (hbar = 1).
CMatrix trilinear_H(double g, const ModeDims& dims);

// gbar (a1^dag a2 + a1 a2^dag) + g (a1^dag a2 b^dag + a1 a2^dag b): the
// mechanically displaced frame, mechanics starting from vacuum.
CMatrix displaced_H(double gbar, double g, const ModeDims& dims);

// Beam-splitter unitary e^{-i theta (a1^dag a2 + a1 a2^dag)} on the optical space.
CMatrix beam_splitter(double theta, int d1, int d2);

// Controller branch states |phi_m(t)> = <s,m| e^{-iHt} |psi0 (x) phi0>, m ascending
// from -s to s. psi0 must occupy a single total-photon-number sector.
std::vector<Ket> branch_states(const Ket& psi0_optical, const Ket& phi0_mech, double g,
                               double t, const ModeDims& dims);

// Gram matrix R[i][j] = <phi_i | phi_j>; the reduced optical state in the
// |s,m>_z basis is its transpose.
CMatrix r_coefficients(const std::vector<Ket>& branches);

// Eigenvalues of the trilinear interaction on the (N=1, n-phonon) doublet; returns
// the pair sorted ascending (expected -g sqrt(n), +g sqrt(n)).
std::pair<double, double> dressed_eigencheck(int n, double g = 1.0);

struct DephasingCheck {
    DensityOp rho_exact;
    DensityOp rho_secondorder;
    double deviation;  // trace-norm distance
};

// Exact reduced optical dynamics (displaced-frame evolution, mechanics traced out)
// against the second-order dephasing map
//   U_bs(theta) [rho - (theta g t)^2/2 [Sz,[Sz,rho]]] U_bs(theta)^dag,
// at beta = theta/(g t). rho0 lives on the (N+1)^2 optical space.
DephasingCheck dephasing_map_check(const DensityOp& rho0, int N, double theta, double g,
                                   double t, int mech_dim = 14);

}  // namespace pbs::closed_system
