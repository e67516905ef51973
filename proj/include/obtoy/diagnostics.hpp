#pragma once

// Norms, the discrete energy law residual, and the structural variable
// Gamma = omega - R tau. L2 norms use the unnormalized integral over
// [0,2pi)^2 approximated by collocation quadrature (2pi/n)^2 * sum of
// squares, evaluated through Parseval.

#include <optional>

#include "obtoy/models.hpp"
#include "obtoy/solver_config.hpp"

namespace obtoy {

inline double l2_norm(const SpectralField& f) {
    return two_pi * spectral_l2(f) / double(f.grid->size());
}

inline double l2_norm_pair(const SpectralField& a, const SpectralField& b) {
    return two_pi * spectral_l2_pair(a, b) / double(a.grid->size());
}

inline double grad_sq(const SpectralField& f) {
    const Grid& g = *f.grid;
    double s = 0.0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const double kd1 = g.kdx(i), kd2 = g.kdy(j);
            s += (kd1 * kd1 + kd2 * kd2) * std::norm(f.c[g.index(i, j)]);
        }
    const double scale = two_pi / double(g.size());
    return scale * scale * s;
}

inline double h1_norm_pair(const SpectralField& a, const SpectralField& b) {
    const double l2 = l2_norm_pair(a, b);
    return std::sqrt(l2 * l2 + grad_sq(a) + grad_sq(b));
}

inline double linf_norm(const SpectralField& f) {
    PhysicalField p = to_physical(f);
    double worst = 0.0;
    for (double v : p.v) worst = std::max(worst, std::abs(v));
    return worst;
}

// integral of f*g over the torus
inline double inner(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g);
    double s = 0.0;
    for (std::size_t m = 0; m < f.c.size(); ++m)
        s += f.c[m].real() * g.c[m].real() + f.c[m].imag() * g.c[m].imag();
    const double scale = two_pi / double(f.grid->size());
    return scale * scale * s;
}

inline double energy(const State& s) {
    const double eu = l2_norm_pair(s.u.u1, s.u.u2);
    const double et = l2_norm_pair(s.tau.t1, s.tau.t2);
    return 0.5 * (eu * eu + et * et);
}

struct DiagnosticsRecord {
    double t = 0.0;
    double l2_u = 0.0, l2_tau = 0.0;
    double h1_u = 0.0, h1_tau = 0.0;
    double linf_omega = 0.0;
    double energy = 0.0;
    double energy_residual = 0.0;
    std::optional<double> besov_u, besov_tau, gamma_linf;
};

inline DiagnosticsRecord norms(const State& s) {
    DiagnosticsRecord r;
    r.t = s.t;
    r.l2_u = l2_norm_pair(s.u.u1, s.u.u2);
    r.l2_tau = l2_norm_pair(s.tau.t1, s.tau.t2);
    r.h1_u = h1_norm_pair(s.u.u1, s.u.u2);
    r.h1_tau = h1_norm_pair(s.tau.t1, s.tau.t2);
    r.linf_omega = linf_norm(vorticity(s.u));
    r.energy = 0.5 * (r.l2_u * r.l2_u + r.l2_tau * r.l2_tau);
    return r;
}

// R tau with R = -(-Delta)^{-1} curl div acting on the trace-free pair:
// multiplier (-2 k1 k2, k1^2 - k2^2)/|k|^2, unit Euclidean norm for every
// lattice mode k != 0. True wavenumbers throughout; k = 0 maps to zero.
inline SpectralField riesz_tau(const StressField& tau) {
    require_same_grid(tau.t1, tau.t2);
    const Grid& g = *tau.t1.grid;
    SpectralField out(tau.t1.grid);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const double k1 = g.kx(i), k2 = g.ky(j);
            const double k2n = k1 * k1 + k2 * k2;
            if (k2n == 0.0) continue;
            const std::size_t idx = g.index(i, j);
            out.c[idx] =
                (-2.0 * k1 * k2 * tau.t1.c[idx] + (k1 * k1 - k2 * k2) * tau.t2.c[idx]) / k2n;
        }
    return out;
}

inline SpectralField gamma(const State& s) {
    SpectralField w = vorticity(s.u);
    SpectralField rt = riesz_tau(s.tau);
    for (std::size_t m = 0; m < w.c.size(); ++m) w.c[m] -= rt.c[m];
    return w;
}

// Defect of the discrete energy law over one step:
//   (E_next - E_prev)/dt + |grad tau|^2 + a |tau|^2 (+ <Q, tau>, nonlinear)
// with the dissipation terms at the next level. O(dt) for the linear scheme.
inline double energy_residual(const State& prev, const State& next, const SolverConfig& cfg) {
    const double dt = next.t - prev.t;
    if (dt <= 0.0) throw std::invalid_argument("states must be consecutive in time");
    double r = (energy(next) - energy(prev)) / dt + grad_sq(next.tau.t1) + grad_sq(next.tau.t2) +
               cfg.a * std::pow(l2_norm_pair(next.tau.t1, next.tau.t2), 2);
    if (cfg.model == ModelKind::nonlinear) {
        StressField q =
            q_term(vorticity(next.u), next.tau, cfg.dealias_kmax(), cfg.q_formula);
        r += inner(q.t1, next.tau.t1) + inner(q.t2, next.tau.t2);
    }
    return r;
}

}  // namespace obtoy
