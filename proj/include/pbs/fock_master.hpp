#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "pbs/params.hpp"
#include "pbs/types.hpp"

// Unconditional Fock-state master-equation hierarchy for two single-photon
// wavepacket inputs: 16 generalized density operators rho_{m,n;p,q} indexed by
// the input-field Fock levels (m,n for the cavity-1 pulse xi, p,q for the
// cavity-2 pulse eta). Only diagonal-index levels start populated
// (rho_{m,n;p,q}(0) = delta_mn delta_pq rho0); the physical state is the
// coefficient-weighted sum over all levels.

namespace pbs::fock_master {

constexpr int kLevels = 16;

inline constexpr int level_index(int m, int n, int p, int q) {
    return ((m * 2 + n) * 2 + p) * 2 + q;
}

enum class Frame { Displaced, Lab };

struct Scenario {
    enum class Kind { MZ, HOM } kind = Kind::HOM;
    double phi = 0.0;  // MZ arm phase

    static Scenario mz(double phi) { return {Kind::MZ, phi}; }
    static Scenario hom() { return {Kind::HOM, 0.0}; }
};

struct FieldCoeffs {
    std::array<cplx, kLevels> c{};

    cplx& operator()(int m, int n, int p, int q) { return c[level_index(m, n, p, q)]; }
    cplx operator()(int m, int n, int p, int q) const { return c[level_index(m, n, p, q)]; }
};

FieldCoeffs mz_coeffs(double phi);
FieldCoeffs hom_coeffs();

class Engine;  // internal generator machinery shared with the trajectory module

struct FockHierarchy {
    ModeDims dims;
    SystemParams params;
    PulseShape xi, eta;
    Frame frame = Frame::Displaced;
    double t = 0.0;
    std::array<DensityOp, kLevels> ops;
    std::shared_ptr<const Engine> engine;

    const DensityOp& op(int m, int n, int p, int q) const {
        return ops[level_index(m, n, p, q)];
    }
    DensityOp& op(int m, int n, int p, int q) { return ops[level_index(m, n, p, q)]; }
};

// Hierarchy at t = 0 with cavities empty and the mechanics loaded with mech_state,
// plus the field coefficients of the scenario. In the displaced frame the
// effective couplings are (gbar, g); in the lab frame the bare trilinear g alone.
std::pair<FockHierarchy, FieldCoeffs> init_hierarchy(const Scenario& sc, const SystemParams& p,
                                                     const ModeDims& dims, const Ket& mech_state,
                                                     Frame frame = Frame::Displaced);

// Time derivative of all 16 levels (test/diagnostic surface; integrate() uses the
// same generator internally).
std::array<DensityOp, kLevels> hierarchy_rhs(const FockHierarchy& h, double t);

struct IntegrateOptions {
    double dt = 2e-3;
    int check_stride = 200;        // adjoint-symmetry / trace checks
    int positivity_stride = 5000;  // eigenvalue checks are O(D^3)
    double symmetry_tol = 1e-8;
    double trace_tol = 1e-6;
    double positivity_tol = 1e-6;
    // called after every accepted step
    std::function<void(const FockHierarchy&)> observer;
};

// Fixed-step RK4 integration to t_end; throws NumericalError naming the first bad
// time if an invariant breaks beyond 10x its tolerance.
void integrate(FockHierarchy& h, double t_end, const IntegrateOptions& opts = {});

// rho_system(t) = sum c*_{m,n;p,q} rho_{m,n;p,q}(t)
DensityOp physical_state(const FockHierarchy& h, const FieldCoeffs& c);

// <a_out^dag a_out>(t) for detector 1 or 2 at the hierarchy's current time,
// assembled with the Fock-convention output field.
double detector_flux(const FockHierarchy& h, const FieldCoeffs& c, int mode);

// kappa1 kappa2 Tr[a1^dag a1 a2^dag a2 rho_{1,1;1,1}]
double coincidence_rate(const FockHierarchy& h);

// Per-level flux ingredients F_l such that flux(c) = Re sum_l conj(c_l) F_l;
// lets one integration serve a whole phase grid.
std::array<cplx, kLevels> flux_ingredients(const FockHierarchy& h, int mode);

// ---- scenario-level drivers ----

struct MzOptions {
    double dt = 2e-3;
    double t_end = 40.0;
    int mech_dim_displaced = 12;
    Frame frame = Frame::Displaced;  // Lab is forced for beta == 0
};

struct MzObservables {
    std::vector<double> phis;
    std::vector<double> times;
    // pu[k][j] = P_u rate at times[k], phis[j]
    std::vector<std::vector<double>> pu;
    std::vector<double> v_t;              // visibility over phi at each time
    std::vector<double> pu_integrated;    // time-integrated P_u per phi
    double v_integrated = 0.0;
};

// One full MZ run at mechanical amplitude beta with g = gbar/beta (displaced frame);
// beta = 0 runs the bare trilinear model with the mechanics in vacuum and g = gbar.
MzObservables mz_observables(const SystemParams& p, double beta,
                             const std::vector<double>& phi_grid, const MzOptions& opts = {});

struct HomOptions {
    double dt = 2e-3;
    double t_end = 12.0;
    int mech_dim_displaced = 12;
    Frame frame = Frame::Displaced;
};

struct HomCurve {
    double tau = 0.0;
    std::vector<double> times;
    std::vector<double> coincidence;       // C(t, tau)
    std::vector<double> flux1, flux2;      // detector rates
};

// Coincidence-rate curve for one inter-photon delay tau (tau < 0 delays the
// cavity-1 pulse instead, keeping both envelopes causal).
HomCurve hom_coincidence_curve(const SystemParams& p, double beta, double tau,
                               const HomOptions& opts = {});

}  // namespace pbs::fock_master
