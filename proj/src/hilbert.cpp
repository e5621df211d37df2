#include "pbs/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace pbs {

void ModeDims::validate() const {
    if (d1 < 2 || d2 < 2 || dm < 1)
        throw DimensionError("ModeDims: optical dims must be >= 2, mechanical >= 1");
}

}  // namespace pbs

namespace pbs::hilbert {

CMatrix annihilation(int dim) {
    if (dim < 2) throw DimensionError("annihilation: dim must be >= 2");
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix embed(const CMatrix& op, Mode mode, const ModeDims& dims) {
    dims.validate();
    const int d = mode == Mode::Cavity1 ? dims.d1 : mode == Mode::Cavity2 ? dims.d2 : dims.dm;
    if (op.rows() != d || op.cols() != d)
        throw DimensionError("embed: operator size does not match the mode dimension");
    const CMatrix i1 = CMatrix::Identity(dims.d1, dims.d1);
    const CMatrix i2 = CMatrix::Identity(dims.d2, dims.d2);
    const CMatrix im = CMatrix::Identity(dims.dm, dims.dm);
    switch (mode) {
        case Mode::Cavity1: return kron(kron(op, i2), im);
        case Mode::Cavity2: return kron(kron(i1, op), im);
        default: return kron(kron(i1, i2), op);
    }
}

double coherent_tail_mass(cplx beta, int dim) {
    const double mu = std::norm(beta);  // Poisson mean |beta|^2
    double term = std::exp(-mu);        // P(0)
    double head = 0.0;
    for (int n = 0; n < dim; ++n) {
        head += term;
        term *= mu / double(n + 1);
    }
    return std::max(0.0, 1.0 - head);
}

int required_coherent_dim(cplx beta) {
    const double mu = std::norm(beta);
    if (mu == 0.0) return 2;
    if (mu > 500.0) {
        // e^{-mu} underflows; mean + 7 sigma keeps the tail well under 1e-10
        return int(std::ceil(mu + 7.0 * std::sqrt(mu))) + 22;
    }
    double term = std::exp(-mu);
    double head = 0.0;
    int n = 0;
    // head after n terms covers occupations < n; stop when tail < 1e-10
    while (head < 1.0 - 1e-10) {
        head += term;
        term *= mu / double(n + 1);
        ++n;
        if (n > 100000) break;
    }
    return n + 2;
}

bool truncation_ok(cplx beta, int dim) { return dim >= required_coherent_dim(beta); }

Ket coherent_ket(cplx beta, int dim) {
    if (dim < 2) throw DimensionError("coherent_ket: dim must be >= 2");
    if (!truncation_ok(beta, dim))
        throw TruncationError("coherent_ket: truncation too small for amplitude",
                              coherent_tail_mass(beta, dim));
    Ket c = Ket::Zero(dim);
    c(0) = std::exp(-std::norm(beta) / 2.0);
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * beta / std::sqrt(double(n));
    const double nrm = c.norm();
    return c / nrm;
}

bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

CMatrix expm_unitary(const CMatrix& H, double t) {
    if (!is_hermitian(H, 1e-9 * std::max(1.0, H.cwiseAbs().maxCoeff())))
        throw ContractViolation("expm: generator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const Eigen::VectorXd w = es.eigenvalues();
    const CMatrix& V = es.eigenvectors();
    Eigen::VectorXcd phase(w.size());
    for (int i = 0; i < w.size(); ++i) phase(i) = std::exp(cplx(0.0, -w(i) * t));
    return V * phase.asDiagonal() * V.adjoint();
}

Ket expm_apply(const CMatrix& H, double t, const Ket& psi) {
    if (H.rows() != psi.size())
        throw DimensionError("expm_apply: state length does not match the generator");
    if (!is_hermitian(H, 1e-9 * std::max(1.0, H.cwiseAbs().maxCoeff())))
        throw ContractViolation("expm_apply: generator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const Eigen::VectorXd w = es.eigenvalues();
    const CMatrix& V = es.eigenvectors();
    Eigen::VectorXcd coeff = V.adjoint() * psi;
    for (int i = 0; i < w.size(); ++i) coeff(i) *= std::exp(cplx(0.0, -w(i) * t));
    return V * coeff;
}

CMatrix displacement(cplx beta, int dim) {
    if (dim < 2) throw DimensionError("displacement: dim must be >= 2");
    // half a unit of extra amplitude as ladder headroom
    if (!truncation_ok(std::abs(beta) + 0.5, dim))
        throw TruncationError("displacement: truncation too small for amplitude",
                              coherent_tail_mass(beta, dim));
    const CMatrix b = annihilation(dim);
    // beta b^dag - beta^* b = -i H with H Hermitian
    const CMatrix gen = beta * b.adjoint() - std::conj(beta) * b;
    const CMatrix h = cplx(0, 1) * gen;
    return expm_unitary(h, 1.0);
}

DensityOp partial_trace(const DensityOp& rho, const std::vector<Mode>& keep,
                        const ModeDims& dims) {
    dims.validate();
    if (rho.rows() != dims.total() || rho.cols() != dims.total())
        throw DimensionError("partial_trace: operator does not match dims");
    if (keep.empty()) throw InvalidArgument("partial_trace: keep set must be nonempty");

    bool k1 = false, k2 = false, km = false;
    for (Mode m : keep) {
        if (m == Mode::Cavity1) k1 = true;
        else if (m == Mode::Cavity2) k2 = true;
        else km = true;
    }
    const int dkeep = (k1 ? dims.d1 : 1) * (k2 ? dims.d2 : 1) * (km ? dims.dm : 1);
    DensityOp out = DensityOp::Zero(dkeep, dkeep);

    auto kept_index = [&](int n1, int n2, int nm) {
        int idx = 0;
        if (k1) idx = idx * dims.d1 + n1;
        if (k2) idx = idx * dims.d2 + n2;
        if (km) idx = idx * dims.dm + nm;
        return idx;
    };
    auto full_index = [&](int n1, int n2, int nm) { return (n1 * dims.d2 + n2) * dims.dm + nm; };

    for (int n1 = 0; n1 < dims.d1; ++n1)
        for (int n2 = 0; n2 < dims.d2; ++n2)
            for (int nm = 0; nm < dims.dm; ++nm) {
                const int r = full_index(n1, n2, nm);
                const int rk = kept_index(n1, n2, nm);
                for (int m1 = 0; m1 < (k1 ? dims.d1 : 1); ++m1)
                    for (int m2 = 0; m2 < (k2 ? dims.d2 : 1); ++m2)
                        for (int mm = 0; mm < (km ? dims.dm : 1); ++mm) {
                            const int c1 = k1 ? m1 : n1;
                            const int c2 = k2 ? m2 : n2;
                            const int cm = km ? mm : nm;
                            out(rk, kept_index(c1, c2, cm)) += rho(r, full_index(c1, c2, cm));
                        }
            }
    return out;
}

double trace_norm_distance(const DensityOp& a, const DensityOp& b) {
    const CMatrix d = a - b;
    if (is_hermitian(d, 1e-10)) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
        return 0.5 * es.eigenvalues().cwiseAbs().sum();
    }
    Eigen::JacobiSVD<CMatrix> svd(d);
    return 0.5 * svd.singularValues().sum();
}

}  // namespace pbs::hilbert
