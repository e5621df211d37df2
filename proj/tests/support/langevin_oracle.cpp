#include "langevin_oracle.hpp"

#include <cmath>

namespace pbs::test_oracle {

namespace {

// cumulative trapezoid with explicit left/right limits at each node, so a pulse
// front lying on a node contributes nothing to the cell before it
std::vector<cplx> cumtrap(const std::vector<cplx>& left, const std::vector<cplx>& right,
                          double h) {
    std::vector<cplx> out(left.size(), cplx(0));
    for (size_t i = 1; i < left.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (right[i - 1] + left[i]);
    return out;
}

double trapz(const std::vector<double>& y, double h) {
    double s = 0.0;
    for (size_t i = 1; i < y.size(); ++i) s += 0.5 * h * (y[i - 1] + y[i]);
    return s;
}

cplx trapz(const std::vector<cplx>& y, double h) {
    cplx s(0);
    for (size_t i = 1; i < y.size(); ++i) s += 0.5 * h * (y[i - 1] + y[i]);
    return s;
}

}  // namespace

LangevinAmplitudes langevin_amplitudes(const SystemParams& p, double tau, double t_max, int n) {
    p.validate();
    const double k = p.kappa1, g = p.gbar, gam = p.gamma;
    const double off1 = std::max(0.0, -tau);
    const double off2 = std::max(0.0, tau);

    LangevinAmplitudes out;
    const double h = t_max / (n - 1);
    out.h = h;
    out.t.resize(n);
    // snap the pulse offsets onto grid nodes (delays of interest are multiples of h)
    auto pulse = [gam](double t, double off) {
        return t >= off - 1e-12 ? std::sqrt(gam) * std::exp(-gam * (t - off) / 2.0) : 0.0;
    };

    std::vector<cplx> cxi_l(n), cxi_r(n), dxi_l(n), dxi_r(n);
    std::vector<cplx> ceta_l(n), ceta_r(n), deta_l(n), deta_r(n);
    std::vector<double> xi(n), eta(n);
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        out.t[i] = t;
        const double C = std::exp(k * t / 2.0) * std::cos(g * t);
        const cplx D = cplx(0, 1) * std::exp(k * t / 2.0) * std::sin(g * t);
        xi[i] = pulse(t, off1);
        eta[i] = pulse(t, off2);
        const double xl = t < off1 + 1e-12 && off1 > 0 ? 0.0 : xi[i];
        const double el = t < off2 + 1e-12 && off2 > 0 ? 0.0 : eta[i];
        cxi_l[i] = C * xl;   cxi_r[i] = C * xi[i];
        dxi_l[i] = D * xl;   dxi_r[i] = D * xi[i];
        ceta_l[i] = C * el;  ceta_r[i] = C * eta[i];
        deta_l[i] = D * el;  deta_r[i] = D * eta[i];
    }
    const auto icx = cumtrap(cxi_l, cxi_r, h), idx = cumtrap(dxi_l, dxi_r, h);
    const auto ice = cumtrap(ceta_l, ceta_r, h), ide = cumtrap(deta_l, deta_r, h);

    out.p11.resize(n); out.p12.resize(n); out.p21.resize(n); out.p22.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = out.t[i];
        const cplx A = std::exp(-k * t / 2.0) * std::cos(g * t);
        const cplx B = cplx(0, -1) * std::exp(-k * t / 2.0) * std::sin(g * t);
        // a_out = sqrt(k) a - a_in with a from the propagator solution
        out.p11[i] = k * (A * icx[i] + B * idx[i]) - xi[i];
        out.p12[i] = k * (A * ide[i] + B * ice[i]);
        out.p21[i] = k * (B * icx[i] + A * idx[i]);
        out.p22[i] = k * (B * ide[i] + A * ice[i]) - eta[i];
    }
    return out;
}

G2Quadrature g2_quadrature(const SystemParams& p, double tau, double t_max, int n) {
    const auto am = langevin_amplitudes(p, tau, t_max, n);
    const double h = am.h;
    std::vector<double> a11(n), a12(n), a21(n), a22(n);
    std::vector<cplx> j1(n), j2(n);
    for (int i = 0; i < n; ++i) {
        a11[i] = std::norm(am.p11[i]);
        a12[i] = std::norm(am.p12[i]);
        a21[i] = std::norm(am.p21[i]);
        a22[i] = std::norm(am.p22[i]);
        j1[i] = am.p11[i] * std::conj(am.p12[i]);
        j2[i] = am.p22[i] * std::conj(am.p21[i]);
    }
    const double i11 = trapz(a11, h), i12 = trapz(a12, h);
    const double i21 = trapz(a21, h), i22 = trapz(a22, h);
    const cplx J1 = trapz(j1, h), J2 = trapz(j2, h);
    // |p11(t) p22(t') + p12(t) p21(t')|^2 integrates to a separable combination
    G2Quadrature out;
    out.numerator = i11 * i22 + i12 * i21 + 2.0 * std::real(J1 * J2);
    out.flux1 = i11 + i12;
    out.flux2 = i21 + i22;
    out.g2 = out.numerator / (out.flux1 * out.flux2);
    return out;
}

double mz_pu_quadrature(double phi, const SystemParams& p, double t_max, int n) {
    const auto am = langevin_amplitudes(p, 0.0, t_max, n);
    std::vector<double> f(n);
    const cplx ph = std::exp(cplx(0, phi));
    for (int i = 0; i < n; ++i) f[i] = 0.5 * std::norm(ph * am.p11[i] + am.p12[i]);
    return trapz(f, am.h);
}

std::pair<double, double> transmission_quadrature(const SystemParams& p, double t_max, int n) {
    const auto am = langevin_amplitudes(p, 0.0, t_max, n);
    std::vector<double> ft(n), fr(n);
    for (int i = 0; i < n; ++i) {
        ft[i] = std::norm(am.p21[i]);
        fr[i] = std::norm(am.p11[i]);
    }
    return {trapz(ft, am.h), trapz(fr, am.h)};
}

}  // namespace pbs::test_oracle
