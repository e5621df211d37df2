#include "pbs/closed_system.hpp"

#include <cmath>

namespace pbs::closed_system {

using hilbert::annihilation;
using hilbert::embed;
using hilbert::kron;

SU2Ops su2_generators(int N) {
    if (N < 1) throw InvalidArgument("su2_generators: N must be >= 1");
    const int d = N + 1;
    const CMatrix a = annihilation(d);
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix a1 = kron(a, id);
    const CMatrix a2 = kron(id, a);
    SU2Ops out;
    out.N = N;
    out.Sz = 0.5 * (a2.adjoint() * a2 - a1.adjoint() * a1);
    out.Sx = 0.5 * (a2.adjoint() * a1 + a1.adjoint() * a2);
    out.Sy = cplx(0, -0.5) * (a2.adjoint() * a1 - a1.adjoint() * a2);
    out.Sp = out.Sx + cplx(0, 1) * out.Sy;
    out.Sm = out.Sx - cplx(0, 1) * out.Sy;
    return out;
}

CMatrix trilinear_H(double g, const ModeDims& dims) {
    dims.validate();
    if (dims.dm < 2) {
        if (g != 0.0)
            throw DimensionError("trilinear_H: mechanical dim must be >= 2 for g != 0");
        return CMatrix::Zero(dims.total(), dims.total());
    }
    const CMatrix a1 = embed(annihilation(dims.d1), Mode::Cavity1, dims);
    const CMatrix a2 = embed(annihilation(dims.d2), Mode::Cavity2, dims);
    const CMatrix b = embed(annihilation(dims.dm), Mode::Mech, dims);
    return g * (a1.adjoint() * a2 * b.adjoint() + a1 * a2.adjoint() * b);
}

CMatrix displaced_H(double gbar, double g, const ModeDims& dims) {
    dims.validate();
    const CMatrix a1 = embed(annihilation(dims.d1), Mode::Cavity1, dims);
    const CMatrix a2 = embed(annihilation(dims.d2), Mode::Cavity2, dims);
    CMatrix h = gbar * (a1.adjoint() * a2 + a1 * a2.adjoint());
    if (g != 0.0 && dims.dm >= 2) {
        const CMatrix b = embed(annihilation(dims.dm), Mode::Mech, dims);
        h += g * (a1.adjoint() * a2 * b.adjoint() + a1 * a2.adjoint() * b);
    }
    return h;
}

CMatrix beam_splitter(double theta, int d1, int d2) {
    const CMatrix a1 = kron(annihilation(d1), CMatrix::Identity(d2, d2));
    const CMatrix a2 = kron(CMatrix::Identity(d1, d1), annihilation(d2));
    return hilbert::expm_unitary(a1.adjoint() * a2 + a1 * a2.adjoint(), theta);
}

std::vector<Ket> branch_states(const Ket& psi0_optical, const Ket& phi0_mech, double g,
                               double t, const ModeDims& dims) {
    dims.validate();
    if (psi0_optical.size() != dims.d1 * dims.d2)
        throw DimensionError("branch_states: optical state does not match dims");
    if (phi0_mech.size() != dims.dm)
        throw DimensionError("branch_states: mechanical state does not match dims");

    // the initial optical state must occupy a single N sector
    int N = -1;
    for (int n1 = 0; n1 < dims.d1; ++n1)
        for (int n2 = 0; n2 < dims.d2; ++n2) {
            if (std::abs(psi0_optical(n1 * dims.d2 + n2)) > 1e-12) {
                if (N < 0) N = n1 + n2;
                else if (N != n1 + n2)
                    throw InvalidArgument("branch_states: optical state mixes photon-number sectors");
            }
        }
    if (N < 0) throw InvalidArgument("branch_states: optical state is zero");
    if (dims.d1 < N + 1 || dims.d2 < N + 1)
        throw DimensionError("branch_states: dims cannot hold the N-photon sector");

    Ket psi(dims.total());
    for (int i = 0; i < dims.d1 * dims.d2; ++i)
        for (int k = 0; k < dims.dm; ++k) psi(i * dims.dm + k) = psi0_optical(i) * phi0_mech(k);

    const Ket evolved = hilbert::expm_apply(trilinear_H(g, dims), t, psi);

    // branch m: optical basis |s-m>_1 |s+m>_2, m = -s..s in integer steps of the index
    std::vector<Ket> branches;
    branches.reserve(N + 1);
    double total = 0.0;
    for (int k2 = 0; k2 <= N; ++k2) {  // k2 = s+m, so m ascending
        const int k1 = N - k2;
        Ket phi(dims.dm);
        for (int j = 0; j < dims.dm; ++j)
            phi(j) = evolved((k1 * dims.d2 + k2) * dims.dm + j);
        total += phi.squaredNorm();
        branches.push_back(std::move(phi));
    }
    if (std::abs(total - 1.0) > 1e-8)
        throw TruncationError("branch_states: branch norms do not sum to one (mechanical truncation too small)",
                              std::abs(total - 1.0));
    return branches;
}

CMatrix r_coefficients(const std::vector<Ket>& branches) {
    const int n = int(branches.size());
    if (n == 0) throw InvalidArgument("r_coefficients: no branches");
    CMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = branches[i].dot(branches[j]);
    return r;
}

std::pair<double, double> dressed_eigencheck(int n, double g) {
    if (n < 1) throw InvalidArgument("dressed_eigencheck: n must be >= 1");
    ModeDims dims{2, 2, n + 1};
    const CMatrix h = trilinear_H(g, dims);
    // doublet basis: |0,1>(x)|n-1>  and  |1,0>(x)|n>
    const int i1 = (0 * dims.d2 + 1) * dims.dm + (n - 1);
    const int i2 = (1 * dims.d2 + 0) * dims.dm + n;
    CMatrix block(2, 2);
    block << h(i1, i1), h(i1, i2), h(i2, i1), h(i2, i2);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(block, Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

DephasingCheck dephasing_map_check(const DensityOp& rho0, int N, double theta, double g,
                                   double t, int mech_dim) {
    if (g <= 0 || t <= 0) throw InvalidArgument("dephasing_map_check: g and t must be positive");
    const int d = N + 1;
    if (rho0.rows() != d * d) throw DimensionError("dephasing_map_check: rho0 does not match N");
    const double gbar = theta / t;  // theta = gbar t

    // exact route: displaced frame, mechanics from vacuum; the optical reduced state
    // is unchanged by the displacement
    ModeDims dims{d, d, mech_dim};
    const CMatrix u = hilbert::expm_unitary(displaced_H(gbar, g, dims), t);
    DensityOp full = DensityOp::Zero(dims.total(), dims.total());
    for (int i = 0; i < d * d; ++i)
        for (int j = 0; j < d * d; ++j) full(i * mech_dim, j * mech_dim) = rho0(i, j);
    const DensityOp evolved = u * full * u.adjoint();
    DensityOp rho_exact =
        hilbert::partial_trace(evolved, {Mode::Cavity1, Mode::Cavity2}, dims);

    // second-order dephasing map
    const SU2Ops su2 = su2_generators(N);
    const CMatrix ubs = beam_splitter(theta, d, d);
    const double k2 = std::pow(theta * g * t, 2) / 2.0;
    const CMatrix dd = su2.Sz * su2.Sz * rho0 - 2.0 * su2.Sz * rho0 * su2.Sz + rho0 * su2.Sz * su2.Sz;
    DensityOp rho_second = ubs * (rho0 - k2 * dd) * ubs.adjoint();

    DephasingCheck out;
    out.deviation = hilbert::trace_norm_distance(rho_exact, rho_second);
    out.rho_exact = std::move(rho_exact);
    out.rho_secondorder = std::move(rho_second);
    return out;
}

}  // namespace pbs::closed_system
