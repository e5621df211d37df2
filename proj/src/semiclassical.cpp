#include "pbs/semiclassical.hpp"

#include <cmath>

namespace pbs::semiclassical {

namespace {

double require_symmetric_kappa(const SystemParams& p) {
    p.validate();
    if (!p.symmetric_kappa())
        throw UnsupportedConfiguration("semiclassical closed forms require kappa1 == kappa2");
    return p.kappa1;
}

}  // namespace

PropagatorCoeffs propagator_coeffs(double t, const SystemParams& p) {
    const double k = require_symmetric_kappa(p);
    const double g = p.gbar;
    const double c = std::cos(g * t), s = std::sin(g * t);
    const double em = std::exp(-k * t / 2.0), ep = std::exp(k * t / 2.0);
    return {em * c, cplx(0, -1) * em * s, ep * c, cplx(0, 1) * ep * s};
}

TransmissionReflection transmission_reflection(const SystemParams& p) {
    const double k = require_symmetric_kappa(p);
    const double g = p.gbar, gam = p.gamma;
    const double t =
        8.0 * k * g * g * (gam + 2.0 * k) / ((4.0 * g * g + k * k) * (4.0 * g * g + (gam + k) * (gam + k)));
    return {t, 1.0 - t};
}

double mz_pu(double phi, const SystemParams& p) {
    const double k = require_symmetric_kappa(p);
    const double g = p.gbar, gam = p.gamma;
    const double num = 4.0 * k * g * (4.0 * g * g - k * (k + gam)) * std::sin(phi);
    const double den = (4.0 * g * g + k * k) * (4.0 * g * g + (k + gam) * (k + gam));
    return num / den + 0.5;
}

double mz_visibility(const SystemParams& p) {
    const double k = require_symmetric_kappa(p);
    const double g = p.gbar, gam = p.gamma;
    const double num = 8.0 * k * g * (4.0 * g * g - k * (k + gam));
    const double den = (4.0 * g * g + k * k) * (4.0 * g * g + (k + gam) * (k + gam));
    return std::abs(num / den);
}

namespace {

struct G2Constants {
    double A, B, C;
    double Dcoef, Ecoef;  // D = Dcoef * F^2, E = Ecoef * F
    double Fcos, Fsin;    // F = Fcos cos(g dtau) + Fsin sin(g dtau)
};

G2Constants g2_constants(const SystemParams& p) {
    const double k = require_symmetric_kappa(p);
    const double g = p.gbar, gam = p.gamma;
    const double g2 = g * g, g4 = g2 * g2, g8 = g4 * g4;
    const double k2 = k * k, gm2 = gam * gam;
    G2Constants c;
    c.A = std::pow(4 * g2 + k2, 2) * std::pow(16 * g4 + std::pow(gm2 - k2, 2) + 8 * g2 * (gm2 + k2), 2);
    c.B = std::pow(4 * g2 + std::pow(gam - k, 2), 2) *
          (256 * g8 + std::pow(k, 4) * std::pow(gam + k, 4) +
           8 * g2 * (gm2 - 2 * k2) * (16 * g4 + k2 * std::pow(gam + k, 2)) +
           16 * g4 * (std::pow(gam, 4) + 2 * gm2 * k2 + 20 * gam * k * k2 + 22 * k2 * k2));
    c.C = -32 * g2 * k2 * std::pow(4 * g2 + gm2 - k2, 2) * std::pow(4 * g2 + k2, 2);
    c.Dcoef = -32 * g2 * gm2 * k2;
    c.Ecoef = -64 * g2 * gam * k2 * (4 * g2 + gm2 - k2) * (4 * g2 + k2);
    c.Fcos = k * (-12 * g2 - gm2 + k2);
    c.Fsin = 2 * g * (4 * g2 + gm2 - 3 * k2);
    return c;
}

}  // namespace

double hom_g2(double dtau, const SystemParams& p) {
    const double k = require_symmetric_kappa(p);
    const double g = p.gbar, gam = p.gamma;
    const double dt = std::abs(dtau);
    const G2Constants c = g2_constants(p);
    const double f = c.Fcos * std::cos(g * dt) + c.Fsin * std::sin(g * dt);
    // term decay rates: B constant, C -> gamma, D -> kappa, E -> (kappa+gamma)/2
    const double val = (c.B + c.C * std::exp(-gam * dt) + c.Dcoef * f * f * std::exp(-k * dt) +
                        c.Ecoef * f * std::exp(-(k + gam) * dt / 2.0)) /
                       c.A;
    return val;
}

double hom_g2_limit(const SystemParams& p) {
    const G2Constants c = g2_constants(p);
    return c.B / c.A;
}

double hom_visibility(const SystemParams& p) {
    const double ginf = hom_g2_limit(p);
    const double g0 = hom_g2(0.0, p);
    return (ginf - g0) / (ginf + g0);
}

}  // namespace pbs::semiclassical
