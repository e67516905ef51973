#pragma once

// Right-hand-side building blocks of the two toy models: curl, the
// pointwise vorticity-stress coupling, pseudo-spectral transport, the
// exchange forcings, and the Biot-Savart inversion.

#include "obtoy/fft.hpp"
#include "obtoy/spectral_ops.hpp"
#include "obtoy/state.hpp"

namespace obtoy {

// omega = d1 u2 - d2 u1
inline SpectralField vorticity(const VelocityField& u) {
    require_same_grid(u.u1, u.u2);
    const Grid& g = *u.u1.grid;
    SpectralField w(u.u1.grid);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const std::size_t idx = g.index(i, j);
            w.c[idx] = cplx(0.0, g.kdx(i)) * u.u2.c[idx] - cplx(0.0, g.kdy(j)) * u.u1.c[idx];
        }
    return w;
}

enum class QFormula {
    printed,    // omega * (-2 tau2, tau1 - tau2)
    algebraic,  // tau Omega - Omega tau = omega * (tau2, -tau1)
};

// Pointwise coupling term, evaluated on collocation points and truncated
// to |k|_inf <= dealias_kmax on the way back.
inline StressField q_term(const SpectralField& omega, const StressField& tau, int dealias_kmax,
                          QFormula formula = QFormula::printed) {
    require_same_grid(omega, tau.t1);
    require_same_grid(tau.t1, tau.t2);
    const Grid& g = *omega.grid;
    PhysicalField w = to_physical(omega);
    PhysicalField t1 = to_physical(tau.t1);
    PhysicalField t2 = to_physical(tau.t2);
    PhysicalField q1(omega.grid), q2(omega.grid);
    if (formula == QFormula::printed) {
        for (std::size_t m = 0; m < g.size(); ++m) {
            q1.v[m] = -2.0 * w.v[m] * t2.v[m];
            q2.v[m] = w.v[m] * (t1.v[m] - t2.v[m]);
        }
    } else {
        for (std::size_t m = 0; m < g.size(); ++m) {
            q1.v[m] = w.v[m] * t2.v[m];
            q2.v[m] = -w.v[m] * t1.v[m];
        }
    }
    StressField out;
    out.t1 = truncate(to_spectral(q1), dealias_kmax);
    out.t2 = truncate(to_spectral(q2), dealias_kmax);
    return out;
}

// (u . grad) f, pseudo-spectral: spectral derivatives, pointwise products,
// truncation per the configured rule.
inline SpectralField advect(const VelocityField& u, const SpectralField& f, int dealias_kmax) {
    require_same_grid(u.u1, f);
    const Grid& g = *f.grid;
    PhysicalField u1 = to_physical(u.u1);
    PhysicalField u2 = to_physical(u.u2);
    PhysicalField fx = to_physical(derivative(f, 1));
    PhysicalField fy = to_physical(derivative(f, 2));
    PhysicalField prod(f.grid);
    for (std::size_t m = 0; m < g.size(); ++m)
        prod.v[m] = u1.v[m] * fx.v[m] + u2.v[m] * fy.v[m];
    return truncate(to_spectral(prod), dealias_kmax);
}

// Momentum source (d1 t1 + d2 t2, d1 t2 - d2 t1); exact spectral derivatives.
inline std::pair<SpectralField, SpectralField> stress_forcing(const StressField& tau) {
    require_same_grid(tau.t1, tau.t2);
    const Grid& g = *tau.t1.grid;
    SpectralField f1(tau.t1.grid), f2(tau.t1.grid);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const std::size_t idx = g.index(i, j);
            const cplx ik1(0.0, g.kdx(i)), ik2(0.0, g.kdy(j));
            f1.c[idx] = ik1 * tau.t1.c[idx] + ik2 * tau.t2.c[idx];
            f2.c[idx] = ik1 * tau.t2.c[idx] - ik2 * tau.t1.c[idx];
        }
    return {std::move(f1), std::move(f2)};
}

// Stress source (2 d1 u1, d1 u2 + d2 u1).
inline StressField velocity_forcing(const VelocityField& u) {
    require_same_grid(u.u1, u.u2);
    const Grid& g = *u.u1.grid;
    StressField out;
    out.t1 = SpectralField(u.u1.grid);
    out.t2 = SpectralField(u.u1.grid);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const std::size_t idx = g.index(i, j);
            const cplx ik1(0.0, g.kdx(i)), ik2(0.0, g.kdy(j));
            out.t1.c[idx] = 2.0 * ik1 * u.u1.c[idx];
            out.t2.c[idx] = ik1 * u.u2.c[idx] + ik2 * u.u1.c[idx];
        }
    return out;
}

// Velocity from vorticity: u1 = i kd2 w / |kd|^2, u2 = -i kd1 w / |kd|^2.
// The k = 0 mode (and Nyquist rows, where the derivative multiplier
// vanishes) produce no velocity. vorticity(biot_savart(w)) = w for
// mean-free w supported off the Nyquist rows.
inline VelocityField biot_savart(const SpectralField& omega) {
    const Grid& g = *omega.grid;
    VelocityField u(omega.grid);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const double kd1 = g.kdx(i), kd2 = g.kdy(j);
            const double k2 = kd1 * kd1 + kd2 * kd2;
            const std::size_t idx = g.index(i, j);
            if (k2 == 0.0) {
                u.u1.c[idx] = cplx{};
                u.u2.c[idx] = cplx{};
            } else {
                const cplx w = omega.c[idx];
                u.u1.c[idx] = cplx(0.0, kd2 / k2) * w;
                u.u2.c[idx] = cplx(0.0, -kd1 / k2) * w;
            }
        }
    return u;
}

}  // namespace obtoy
