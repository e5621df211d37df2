#pragma once

#include <initializer_list>
#include <vector>

#include "pbs/types.hpp"

// Truncated-Fock-space linear algebra: the substrate for every dynamical module.
// All composite operators use the fixed mode order cavity-1 (x) cavity-2 (x) mechanics;
// the flat index of |n1, n2, nm> is (n1*d2 + n2)*dm + nm.

namespace pbs::hilbert {

// <n-1|a|n> = sqrt(n), entries constructed exactly.
CMatrix annihilation(int dim);

// Kronecker embedding I (x) ... op ... (x) I for one of the three modes.
CMatrix embed(const CMatrix& op, Mode mode, const ModeDims& dims);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Smallest N with Poisson tail sum_{n>=N} e^{-|b|^2} |b|^{2n}/n! < 1e-10, plus 2 levels
// of headroom for ladder action.
int required_coherent_dim(cplx beta);
bool truncation_ok(cplx beta, int dim);
double coherent_tail_mass(cplx beta, int dim);

// c_n = e^{-|b|^2/2} b^n / sqrt(n!), renormalized on the retained levels.
Ket coherent_ket(cplx beta, int dim);

// exp(beta b^dag - beta* b) via Hermitian eigendecomposition of the generator.
CMatrix displacement(cplx beta, int dim);

// Reduced operator over the kept modes (any nonempty subset of {Cavity1, Cavity2, Mech}).
DensityOp partial_trace(const DensityOp& rho, const std::vector<Mode>& keep,
                        const ModeDims& dims);

// e^{-iHt} psi for Hermitian H; throws ContractViolation if H fails the Hermiticity check.
Ket expm_apply(const CMatrix& H, double t, const Ket& psi);

// Dense unitary e^{-iHt} (same Hermiticity contract).
CMatrix expm_unitary(const CMatrix& H, double t);

bool is_hermitian(const CMatrix& m, double tol = 1e-12);

// (1/2) * sum of singular values of (a - b); the standard distance for density operators.
double trace_norm_distance(const DensityOp& a, const DensityOp& b);

}  // namespace pbs::hilbert
