#include "pbs/fock_master.hpp"

#include <cmath>
#include <sstream>

#include "hierarchy_engine.hpp"
#include "pbs/hilbert.hpp"

namespace pbs::fock_master {

namespace {

constexpr int bit_m(int l) { return (l >> 3) & 1; }
constexpr int bit_n(int l) { return (l >> 2) & 1; }
constexpr int bit_p(int l) { return (l >> 1) & 1; }
constexpr int bit_q(int l) { return l & 1; }
constexpr int lower_m(int l) { return l & ~8; }
constexpr int lower_n(int l) { return l & ~4; }
constexpr int lower_p(int l) { return l & ~2; }
constexpr int lower_q(int l) { return l & ~1; }

}  // namespace

Engine::Engine(const ModeDims& dims, const SystemParams& p, Frame frame, PulseShape xi,
               PulseShape eta)
    : dims_(dims), xi_(xi), eta_(eta) {
    dims.validate();
    p.validate();
    k1_ = p.kappa1;
    k2_ = p.kappa2;
    sqk1_ = std::sqrt(k1_);
    sqk2_ = std::sqrt(k2_);

    const std::vector<int> dv = {dims.d1, dims.d2, dims.dm};
    a1_ = make_ladder(dv, {-1, 0, 0});
    a2_ = make_ladder(dv, {0, -1, 0});
    a1d_ = a1_.dagger();
    a2d_ = a2_.dagger();

    const double g_quant = p.g;
    const double g_bs = frame == Frame::Displaced ? p.gbar : 0.0;
    if (g_bs != 0.0) {
        hterms_.push_back({g_bs, make_ladder(dv, {+1, -1, 0})});
        hterms_.push_back({g_bs, make_ladder(dv, {-1, +1, 0})});
    }
    if (g_quant != 0.0) {
        if (dims.dm < 2)
            throw DimensionError("hierarchy engine: mechanical dim must be >= 2 for g != 0");
        hterms_.push_back({g_quant, make_ladder(dv, {+1, -1, +1})});
        hterms_.push_back({g_quant, make_ladder(dv, {-1, +1, -1})});
    }

    n1_ = number_diag(dv, 0);
    n2_ = number_diag(dv, 1);
    n12_ = n1_.cwiseProduct(n2_);
    damp_ = 0.5 * (k1_ * n1_ + k2_ * n2_);
}

void Engine::rhs(const Levels& r, double t, GenMode mode, Levels& out) const {
    const double xv = xi_(t), ev = eta_(t);
    const int d = dims_.total();
    for (int l = 0; l < kLevels; ++l) {
        out[l].setZero(d, d);
        const DensityOp& rl = r[l];
        // -i [H, rho]
        for (const auto& [gc, m] : hterms_) {
            apply_left(m, rl, out[l], cplx(0, -gc));
            apply_right(rl, m, out[l], cplx(0, gc));
        }
        // -1/2 {L1^dag L1 + L2^dag L2, rho}  (diagonal damping)
        for (int j = 0; j < d; ++j)
            out[l].col(j).array() -= (damp_.array() + damp_(j)) * rl.col(j).array();
        // conditional-core input terms
        if (bit_m(l)) apply_left(a1d_, r[lower_m(l)], out[l], -xv * sqk1_);
        if (bit_n(l)) apply_right(r[lower_n(l)], a1_, out[l], -xv * sqk1_);
        if (bit_p(l)) apply_left(a2d_, r[lower_p(l)], out[l], -ev * sqk2_);
        if (bit_q(l)) apply_right(r[lower_q(l)], a2_, out[l], -ev * sqk2_);
        if (bit_m(l) && bit_n(l)) out[l] -= (xv * xv) * r[lower_m(lower_n(l))];
        if (bit_p(l) && bit_q(l)) out[l] -= (ev * ev) * r[lower_p(lower_q(l))];
        // jump-return parts
        const bool with_j1 = mode == GenMode::Unconditional || mode == GenMode::NoD2;
        const bool with_j2 = mode == GenMode::Unconditional || mode == GenMode::NoD1;
        if (with_j1) {
            apply_sandwich(a1_, rl, out[l], k1_);
            if (bit_m(l)) apply_right(r[lower_m(l)], a1d_, out[l], xv * sqk1_);
            if (bit_n(l)) apply_left(a1_, r[lower_n(l)], out[l], xv * sqk1_);
            if (bit_m(l) && bit_n(l)) out[l] += (xv * xv) * r[lower_m(lower_n(l))];
        }
        if (with_j2) {
            apply_sandwich(a2_, rl, out[l], k2_);
            if (bit_p(l)) apply_right(r[lower_p(l)], a2d_, out[l], ev * sqk2_);
            if (bit_q(l)) apply_left(a2_, r[lower_q(l)], out[l], ev * sqk2_);
            if (bit_p(l) && bit_q(l)) out[l] += (ev * ev) * r[lower_p(lower_q(l))];
        }
    }
}

void Engine::jump_superop(const Levels& r, double t, int detector, Levels& out) const {
    const int d = dims_.total();
    const double amp = detector == 1 ? xi_(t) : eta_(t);
    const LadderOp& a = detector == 1 ? a1_ : a2_;
    const LadderOp& ad = detector == 1 ? a1d_ : a2d_;
    const double k = detector == 1 ? k1_ : k2_;
    const double sqk = detector == 1 ? sqk1_ : sqk2_;
    for (int l = 0; l < kLevels; ++l) {
        out[l].setZero(d, d);
        apply_sandwich(a, r[l], out[l], k);
        if (detector == 1) {
            if (bit_m(l)) apply_right(r[lower_m(l)], ad, out[l], amp * sqk);
            if (bit_n(l)) apply_left(a, r[lower_n(l)], out[l], amp * sqk);
            if (bit_m(l) && bit_n(l)) out[l] += (amp * amp) * r[lower_m(lower_n(l))];
        } else {
            if (bit_p(l)) apply_right(r[lower_p(l)], ad, out[l], amp * sqk);
            if (bit_q(l)) apply_left(a, r[lower_q(l)], out[l], amp * sqk);
            if (bit_p(l) && bit_q(l)) out[l] += (amp * amp) * r[lower_p(lower_q(l))];
        }
    }
}

double Engine::jump_rate(const Levels& r, double t, int detector) const {
    const double amp = detector == 1 ? xi_(t) : eta_(t);
    const LadderOp& a = detector == 1 ? a1_ : a2_;
    const LadderOp& ad = detector == 1 ? a1d_ : a2d_;
    const double k = detector == 1 ? k1_ : k2_;
    const double sqk = detector == 1 ? sqk1_ : sqk2_;
    const Eigen::VectorXd& nn = detector == 1 ? n1_ : n2_;
    const int top = level_index(1, 1, 1, 1);
    cplx val = k * nn.cast<cplx>().dot(r[top].diagonal());
    if (detector == 1) {
        val += amp * sqk * trace_of_product(ad, r[lower_m(top)]);
        val += amp * sqk * trace_of_product(a, r[lower_n(top)]);
        val += amp * amp * r[lower_m(lower_n(top))].trace();
    } else {
        val += amp * sqk * trace_of_product(ad, r[lower_p(top)]);
        val += amp * sqk * trace_of_product(a, r[lower_q(top)]);
        val += amp * amp * r[lower_p(lower_q(top))].trace();
    }
    return val.real();
}

std::array<cplx, kLevels> Engine::flux_ingredients(const Levels& r, double t, int mode) const {
    const double amp = mode == 1 ? xi_(t) : eta_(t);
    const LadderOp& a = mode == 1 ? a1_ : a2_;
    const LadderOp& ad = mode == 1 ? a1d_ : a2d_;
    const double k = mode == 1 ? k1_ : k2_;
    const double sqk = mode == 1 ? sqk1_ : sqk2_;
    const Eigen::VectorXd& nn = mode == 1 ? n1_ : n2_;
    std::array<cplx, kLevels> out{};
    for (int l = 0; l < kLevels; ++l) {
        cplx v = k * nn.cast<cplx>().dot(r[l].diagonal());
        if (mode == 1) {
            if (bit_m(l)) v += amp * sqk * trace_of_product(ad, r[lower_m(l)]);
            if (bit_n(l)) v += amp * sqk * trace_of_product(a, r[lower_n(l)]);
            if (bit_m(l) && bit_n(l)) v += amp * amp * r[lower_m(lower_n(l))].trace();
        } else {
            if (bit_p(l)) v += amp * sqk * trace_of_product(ad, r[lower_p(l)]);
            if (bit_q(l)) v += amp * sqk * trace_of_product(a, r[lower_q(l)]);
            if (bit_p(l) && bit_q(l)) v += amp * amp * r[lower_p(lower_q(l))].trace();
        }
        out[l] = v;
    }
    return out;
}

double Engine::coincidence_rate(const Levels& r) const {
    const int top = level_index(1, 1, 1, 1);
    return k1_ * k2_ * n12_.cast<cplx>().dot(r[top].diagonal()).real();
}

void Engine::rk4_step(Levels& r, double t, double dt, GenMode mode, Workspace& ws) const {
    const int d = dims_.total();
    if (!ws.ready) {
        for (int l = 0; l < kLevels; ++l) {
            ws.k[l].resize(d, d);
            ws.acc[l].resize(d, d);
            ws.tmp[l].resize(d, d);
        }
        ws.ready = true;
    }
    // k1
    rhs(r, t, mode, ws.k);
    for (int l = 0; l < kLevels; ++l) {
        ws.acc[l] = r[l] + (dt / 6.0) * ws.k[l];
        ws.tmp[l] = r[l] + (dt / 2.0) * ws.k[l];
    }
    // k2
    rhs(ws.tmp, t + dt / 2, mode, ws.k);
    for (int l = 0; l < kLevels; ++l) {
        ws.acc[l] += (dt / 3.0) * ws.k[l];
        ws.tmp[l] = r[l] + (dt / 2.0) * ws.k[l];
    }
    // k3
    rhs(ws.tmp, t + dt / 2, mode, ws.k);
    for (int l = 0; l < kLevels; ++l) {
        ws.acc[l] += (dt / 3.0) * ws.k[l];
        ws.tmp[l] = r[l] + dt * ws.k[l];
    }
    // k4
    rhs(ws.tmp, t + dt, mode, ws.k);
    for (int l = 0; l < kLevels; ++l) r[l] = ws.acc[l] + (dt / 6.0) * ws.k[l];
}

FieldCoeffs mz_coeffs(double phi) {
    FieldCoeffs c;
    c(1, 1, 0, 0) = 0.5;
    c(0, 0, 1, 1) = 0.5;
    c(0, 1, 1, 0) = 0.5 * std::exp(cplx(0, -phi));
    c(1, 0, 0, 1) = 0.5 * std::exp(cplx(0, phi));
    return c;
}

FieldCoeffs hom_coeffs() {
    FieldCoeffs c;
    c(1, 1, 1, 1) = 1.0;
    return c;
}

std::pair<FockHierarchy, FieldCoeffs> init_hierarchy(const Scenario& sc, const SystemParams& p,
                                                     const ModeDims& dims, const Ket& mech_state,
                                                     Frame frame) {
    dims.validate();
    p.validate();
    if (mech_state.size() != dims.dm)
        throw DimensionError("init_hierarchy: mechanical state does not match dims");
    if (std::abs(mech_state.norm() - 1.0) > 1e-10)
        throw InvalidArgument("init_hierarchy: mechanical state must be normalized");

    FockHierarchy h;
    h.dims = dims;
    h.params = p;
    h.frame = frame;
    h.xi = PulseShape{p.gamma, std::max(0.0, -p.tau)};
    h.eta = PulseShape{p.gamma, std::max(0.0, p.tau)};
    h.t = 0.0;
    h.engine = std::make_shared<Engine>(dims, p, frame, h.xi, h.eta);

    const int d = dims.total();
    Ket psi0 = Ket::Zero(d);
    for (int j = 0; j < dims.dm; ++j) psi0(j) = mech_state(j);  // |0,0> x mech
    DensityOp rho0 = psi0 * psi0.adjoint();
    for (int l = 0; l < kLevels; ++l) {
        // only diagonal field indices carry weight at t = 0
        if (bit_m(l) == bit_n(l) && bit_p(l) == bit_q(l)) h.ops[l] = rho0;
        else h.ops[l] = DensityOp::Zero(d, d);
    }
    FieldCoeffs c = sc.kind == Scenario::Kind::MZ ? mz_coeffs(sc.phi) : hom_coeffs();
    return {std::move(h), c};
}

std::array<DensityOp, kLevels> hierarchy_rhs(const FockHierarchy& h, double t) {
    std::array<DensityOp, kLevels> out;
    h.engine->rhs(h.ops, t, GenMode::Unconditional, out);
    return out;
}

namespace {

void check_invariants(const FockHierarchy& h, const IntegrateOptions& opts, bool positivity) {
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) {
                    const auto& a = h.op(m, n, p, q);
                    const auto& b = h.op(n, m, q, p);
                    const double asym = (a - b.adjoint()).cwiseAbs().maxCoeff();
                    if (asym > 10.0 * opts.symmetry_tol) {
                        std::ostringstream os;
                        os << "hierarchy adjoint symmetry broke at t=" << h.t << " (defect " << asym
                           << ")";
                        throw NumericalError(os.str());
                    }
                }
    const double tr = h.op(1, 1, 1, 1).trace().real();
    if (std::abs(tr - 1.0) > 10.0 * opts.trace_tol) {
        std::ostringstream os;
        os << "top-level trace drifted to " << tr << " at t=" << h.t;
        throw NumericalError(os.str());
    }
    if (positivity) {
        Eigen::SelfAdjointEigenSolver<DensityOp> es(h.op(1, 1, 1, 1), Eigen::EigenvaluesOnly);
        const double mineig = es.eigenvalues().minCoeff();
        if (mineig < -10.0 * opts.positivity_tol) {
            std::ostringstream os;
            os << "top-level state lost positivity (min eig " << mineig << ") at t=" << h.t;
            throw NumericalError(os.str());
        }
    }
}

}  // namespace

void integrate(FockHierarchy& h, double t_end, const IntegrateOptions& opts) {
    if (opts.dt <= 0) throw InvalidArgument("integrate: dt must be positive");
    Engine::Workspace ws;
    long step = 0;
    if (opts.observer) opts.observer(h);
    while (h.t < t_end - 1e-12) {
        const double dt = std::min(opts.dt, t_end - h.t);
        h.engine->rk4_step(h.ops, h.t, dt, GenMode::Unconditional, ws);
        h.t += dt;
        ++step;
        if (opts.check_stride > 0 && step % opts.check_stride == 0)
            check_invariants(h, opts, opts.positivity_stride > 0 && step % opts.positivity_stride == 0);
        if (opts.observer) opts.observer(h);
    }
    if (opts.check_stride > 0) check_invariants(h, opts, true);
}

DensityOp physical_state(const FockHierarchy& h, const FieldCoeffs& c) {
    const int d = h.dims.total();
    DensityOp rho = DensityOp::Zero(d, d);
    for (int l = 0; l < kLevels; ++l)
        if (c.c[l] != cplx(0)) rho += std::conj(c.c[l]) * h.ops[l];
    return rho;
}

double detector_flux(const FockHierarchy& h, const FieldCoeffs& c, int mode) {
    if (mode != 1 && mode != 2) throw InvalidArgument("detector_flux: mode must be 1 or 2");
    const auto f = h.engine->flux_ingredients(h.ops, h.t, mode);
    cplx v(0);
    for (int l = 0; l < kLevels; ++l) v += std::conj(c.c[l]) * f[l];
    return v.real();
}

double coincidence_rate(const FockHierarchy& h) { return h.engine->coincidence_rate(h.ops); }

std::array<cplx, kLevels> flux_ingredients(const FockHierarchy& h, int mode) {
    return h.engine->flux_ingredients(h.ops, h.t, mode);
}

namespace {

// composite Simpson on a uniform grid (trapezoid closure for a trailing odd interval)
double integrate_series(const std::vector<double>& y, double dt) {
    const size_t n = y.size();
    if (n < 2) return 0.0;
    double s = 0.0;
    size_t i = 0;
    for (; i + 2 < n; i += 2) s += dt / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
    if (i + 1 < n) s += 0.5 * dt * (y[i] + y[i + 1]);
    return s;
}

}  // namespace

MzObservables mz_observables(const SystemParams& p_in, double beta,
                             const std::vector<double>& phi_grid, const MzOptions& opts) {
    if (phi_grid.empty()) throw InvalidArgument("mz_observables: empty phi grid");
    SystemParams p = p_in;
    p.tau = 0.0;
    Frame frame = opts.frame;
    ModeDims dims{2, 2, 2};
    if (beta > 0.0) {
        p.beta = beta;
        p.g = p.gbar / beta;
        dims.dm = opts.mech_dim_displaced;
    } else {
        // vacuum mechanics: bare trilinear control at g = gbar
        p.beta = 0.0;
        p.g = p.gbar;
        frame = Frame::Lab;
        dims.dm = 2;  // one photon converts to at most one phonon
    }
    const Ket mech = Ket::Unit(dims.dm, 0);
    auto [h, c0] = init_hierarchy(Scenario::mz(0.0), p, dims, mech, frame);

    std::vector<FieldCoeffs> cs;
    cs.reserve(phi_grid.size());
    for (double phi : phi_grid) cs.push_back(mz_coeffs(phi));

    MzObservables out;
    out.phis = phi_grid;
    std::vector<std::array<cplx, kLevels>> ingredients;
    ingredients.reserve(size_t(opts.t_end / opts.dt) + 2);

    IntegrateOptions io;
    io.dt = opts.dt;
    io.observer = [&](const FockHierarchy& hh) {
        out.times.push_back(hh.t);
        ingredients.push_back(hh.engine->flux_ingredients(hh.ops, hh.t, 1));
    };
    integrate(h, opts.t_end, io);

    const size_t nt = out.times.size();
    const size_t np = phi_grid.size();
    out.pu.assign(nt, std::vector<double>(np, 0.0));
    for (size_t k = 0; k < nt; ++k)
        for (size_t j = 0; j < np; ++j) {
            cplx v(0);
            for (int l = 0; l < kLevels; ++l) v += std::conj(cs[j].c[l]) * ingredients[k][l];
            out.pu[k][j] = v.real();
        }
    out.v_t.resize(nt);
    for (size_t k = 0; k < nt; ++k) {
        double mx = out.pu[k][0], mn = out.pu[k][0];
        for (double v : out.pu[k]) {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        out.v_t[k] = (mx + mn) > 0 ? (mx - mn) / (mx + mn) : 0.0;
    }
    out.pu_integrated.resize(np);
    std::vector<double> series(nt);
    for (size_t j = 0; j < np; ++j) {
        for (size_t k = 0; k < nt; ++k) series[k] = out.pu[k][j];
        out.pu_integrated[j] = integrate_series(series, opts.dt);
    }
    double mx = out.pu_integrated[0], mn = out.pu_integrated[0];
    for (double v : out.pu_integrated) {
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    out.v_integrated = (mx - mn) / (mx + mn);
    return out;
}

HomCurve hom_coincidence_curve(const SystemParams& p_in, double beta, double tau,
                               const HomOptions& opts) {
    SystemParams p = p_in;
    p.tau = tau;
    Frame frame = opts.frame;
    ModeDims dims{3, 3, 2};
    if (beta > 0.0) {
        p.beta = beta;
        p.g = p.gbar / beta;
        dims.dm = opts.mech_dim_displaced;
    } else if (frame == Frame::Displaced) {
        p.beta = 0.0;
        p.g = 0.0;   // semiclassical limit: beam splitter only
        dims.dm = 1;
    } else {
        p.beta = 0.0;
        p.g = p.gbar;
        dims.dm = 3;
    }
    const Ket mech = Ket::Unit(dims.dm, 0);
    auto [h, c] = init_hierarchy(Scenario::hom(), p, dims, mech, frame);

    HomCurve out;
    out.tau = tau;
    IntegrateOptions io;
    io.dt = opts.dt;
    io.observer = [&](const FockHierarchy& hh) {
        out.times.push_back(hh.t);
        out.coincidence.push_back(coincidence_rate(hh));
        out.flux1.push_back(detector_flux(hh, c, 1));
        out.flux2.push_back(detector_flux(hh, c, 2));
    };
    integrate(h, opts.t_end + std::abs(tau), io);
    return out;
}

}  // namespace pbs::fock_master
