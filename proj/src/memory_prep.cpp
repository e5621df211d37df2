#include "pbs/memory_prep.hpp"

#include <cmath>
#include <limits>

#include "pbs/hilbert.hpp"
#include "pbs/ladder_ops.hpp"

namespace pbs::memory_prep {

cplx adiabatic_amplitude(cplx E, double kappa1) {
    if (kappa1 <= 0) throw InvalidArgument("adiabatic_amplitude: kappa1 must be positive");
    return 2.0 * E / std::sqrt(kappa1);
}

Ket swap_final_state(cplx alpha0, double g_tilde_theta, int d2, int dm) {
    if (!hilbert::truncation_ok(alpha0, d2) || !hilbert::truncation_ok(alpha0, dm))
        throw TruncationError("swap_final_state: dims too small for alpha0",
                              hilbert::coherent_tail_mass(alpha0, std::min(d2, dm)));
    const CMatrix a = hilbert::kron(hilbert::annihilation(d2), CMatrix::Identity(dm, dm));
    const CMatrix b = hilbert::kron(CMatrix::Identity(d2, d2), hilbert::annihilation(dm));
    const CMatrix gen = a.adjoint() * b + a * b.adjoint();
    Ket psi0(d2 * dm);
    const Ket c2 = hilbert::coherent_ket(alpha0, d2);
    psi0.setZero();
    for (int i = 0; i < d2; ++i) psi0(i * dm) = c2(i);
    return hilbert::expm_apply(gen, g_tilde_theta, psi0);
}

MemoryEvolveResult memory_me_evolve(const MemoryPrepParams& p,
                                    const std::function<cplx(double)>& alpha_t, double t_end,
                                    double dt, int d2, int dm, int sample_stride) {
    if (dt <= 0 || t_end <= 0) throw InvalidArgument("memory_me_evolve: bad time grid");
    const std::vector<int> dv = {d2, dm};
    const LadderOp ab_dag = make_ladder(dv, {-1, +1});  // a b^dag
    const LadderOp abd_dag = ab_dag.dagger();           // a^dag b
    const LadderOp a = make_ladder(dv, {-1, 0});
    const double gamma_rate = p.Gamma();

    // diagonal parts of the anticommutators: (a b^dag)^dag (a b^dag) = n_a (n_b + 1), a^dag a = n_a
    const Eigen::VectorXd na = number_diag(dv, 0);
    const Eigen::VectorXd nb = number_diag(dv, 1);
    const Eigen::VectorXd w =
        0.5 * (gamma_rate * na.cwiseProduct((nb.array() + 1.0).matrix()) + p.kappa2 * na);

    const int d = d2 * dm;
    auto rhs = [&](const DensityOp& r, double t, DensityOp& out) {
        out.setZero(d, d);
        const cplx av = alpha_t(t);
        if (av != cplx(0)) {
            // -i g [a b^dag alpha^* + a^dag b alpha, rho]
            apply_left(ab_dag, r, out, cplx(0, -1) * p.g * std::conj(av));
            apply_left(abd_dag, r, out, cplx(0, -1) * p.g * av);
            apply_right(r, ab_dag, out, cplx(0, 1) * p.g * std::conj(av));
            apply_right(r, abd_dag, out, cplx(0, 1) * p.g * av);
        }
        if (gamma_rate > 0) apply_sandwich(ab_dag, r, out, gamma_rate);
        if (p.kappa2 > 0) apply_sandwich(a, r, out, p.kappa2);
        for (int j = 0; j < d; ++j)
            out.col(j).array() -= (w.array() + w(j)) * r.col(j).array();
    };

    Ket psi0(d);
    psi0.setZero();
    const Ket c2 = hilbert::coherent_ket(p.alpha0, d2);
    for (int i = 0; i < d2; ++i) psi0(i * dm) = c2(i);
    DensityOp rho = psi0 * psi0.adjoint();

    Ket target(d);
    target.setZero();
    const Ket cb = hilbert::coherent_ket(cplx(0, -1) * p.alpha0, dm);
    for (int j = 0; j < dm; ++j) target(j) = cb(j);

    MemoryEvolveResult res;
    DensityOp k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    double t = 0.0;
    long step = 0;
    auto sample = [&]() {
        res.times.push_back(t);
        res.fidelity.push_back(std::real(target.dot(rho * target)));
        res.trace.push_back(rho.trace().real());
    };
    sample();
    while (t < t_end - 1e-12) {
        const double h = std::min(dt, t_end - t);
        rhs(rho, t, k1);
        tmp = rho + (h / 2) * k1;
        rhs(tmp, t + h / 2, k2);
        tmp = rho + (h / 2) * k2;
        rhs(tmp, t + h / 2, k3);
        tmp = rho + h * k3;
        rhs(tmp, t + h, k4);
        rho += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        t += h;
        ++step;
        if (sample_stride > 0 && step % sample_stride == 0) sample();
    }
    if (res.times.back() != t) sample();
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-6)
        throw NumericalError("memory_me_evolve: trace not preserved (integration diverged)");
    res.rho = std::move(rho);
    return res;
}

MemoryEvolveResult memory_me_evolve_square(const MemoryPrepParams& p, double dt, int d2, int dm) {
    const double alpha_c = p.pulse_area / p.T;
    auto profile = [alpha_c, T = p.T](double t) { return t <= T ? cplx(alpha_c) : cplx(0); };
    return memory_me_evolve(p, profile, p.T, dt, d2, dm);
}

MemoryCondition memory_condition(const MemoryPrepParams& p) {
    const double gA = p.g_tilde();
    const double gt = p.Gamma() * p.T;
    if (gt == 0.0) return {true, std::numeric_limits<double>::infinity()};
    const double margin = gA / gt;
    return {margin >= 10.0, margin};
}

}  // namespace pbs::memory_prep
