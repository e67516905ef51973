#pragma once

// Initial data: the trigonometric velocity/stress fields with fractional
// cosine powers, and the two-Gaussian-vortex vorticity.

#include "obtoy/models.hpp"
#include "obtoy/solver_config.hpp"

namespace obtoy {

// Real-valued reading of c^p: ordinary power at integer p, sign(c)|c|^p
// otherwise. Continuous in c, reduces to the usual power at integer p.
inline double signed_pow(double c, double p) {
    const double r = std::round(p);
    if (p == r) return std::pow(c, r);
    const double mag = std::pow(std::abs(c), p);
    return c < 0.0 ? -mag : mag;
}

namespace detail {

struct TrigData {
    PhysicalField u1, u2, t1, t2;
};

inline TrigData sample_trig(const GridPtr& grid, double m, bool tau_offset) {
    const Grid& g = *grid;
    TrigData d{PhysicalField(grid), PhysicalField(grid), PhysicalField(grid),
               PhysicalField(grid)};
    const double off = tau_offset ? 1.0 : 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        const double cx = std::cos(g.x(i));
        const double sx = std::sin(g.x(i));
        const double cxm = signed_pow(cx, m);
        const double cxm1 = signed_pow(cx, m - 1.0);
        for (int j = 0; j < g.ny(); ++j) {
            const double cy = std::cos(g.y(j));
            const double sy = std::sin(g.y(j));
            const double cym = signed_pow(cy, m);
            const double cym1 = signed_pow(cy, m - 1.0);
            const std::size_t idx = g.index(i, j);
            d.u1.v[idx] = -(m / 2.0) * cxm * cym1 * sy;
            d.u2.v[idx] = (m / 2.0) * cxm1 * cym1 * sx;
            d.t1.v[idx] = off - (m / 2.0) * cxm * cym1 * sy;
            d.t2.v[idx] = off + (m / 2.0) * cxm1 * cym * sx;
        }
    }
    return d;
}

}  // namespace detail

// Trigonometric data, Pi_N-truncated, velocity Leray-projected (the
// printed u0 is not exactly divergence-free).
inline State trig_ic(const GridPtr& grid, double m, bool tau_offset = false,
                     int dealias_kmax = -1) {
    if (!(m > 1.0)) throw std::invalid_argument("trig initial data needs m > 1");
    if (dealias_kmax < 0) dealias_kmax = std::min(grid->nx(), grid->ny()) / 2;
    detail::TrigData d = detail::sample_trig(grid, m, tau_offset);
    State s(grid);
    s.u.u1 = truncate(to_spectral(d.u1), dealias_kmax);
    s.u.u2 = truncate(to_spectral(d.u2), dealias_kmax);
    std::tie(s.u.u1, s.u.u2) = leray_project(s.u.u1, s.u.u2);
    s.tau.t1 = truncate(to_spectral(d.t1), dealias_kmax);
    s.tau.t2 = truncate(to_spectral(d.t2), dealias_kmax);
    return s;
}

// Two Gaussian vortices, sampled with x, y centered in [-pi, pi).
inline PhysicalField gaussian_vortex_samples(const GridPtr& grid) {
    const Grid& g = *grid;
    PhysicalField w0(grid);
    for (int i = 0; i < g.nx(); ++i) {
        double x = g.x(i);
        if (x >= std::numbers::pi) x -= two_pi;
        for (int j = 0; j < g.ny(); ++j) {
            double y = g.y(j);
            if (y >= std::numbers::pi) y -= two_pi;
            const double xp = x + std::numbers::pi / 4.0;
            const double xm = x - std::numbers::pi / 4.0;
            w0.v[g.index(i, j)] =
                std::exp(-5.0 * (xp * xp + y * y)) + std::exp(-5.0 * (xm * xm + y * y));
        }
    }
    return w0;
}

// Velocity induced by the vortex pair; the nonzero mean of w0 is dropped
// by the inversion.
inline VelocityField gaussian_vortex_ic(const GridPtr& grid) {
    if (grid->nx() < 64 || grid->ny() < 64)
        throw std::invalid_argument("gaussian initial data needs nx, ny >= 64");
    return biot_savart(to_spectral(gaussian_vortex_samples(grid)));
}

inline State make_initial_state(const SolverConfig& cfg, const GridPtr& grid) {
    const int kmax = cfg.dealias_kmax();
    if (cfg.ic == IcKind::trig) return trig_ic(grid, cfg.m, cfg.tau_offset, kmax);
    State s = trig_ic(grid, cfg.m, cfg.tau_offset, kmax);
    VelocityField u = gaussian_vortex_ic(grid);
    s.u.u1 = truncate(u.u1, kmax);
    s.u.u2 = truncate(u.u2, kmax);
    return s;
}

}  // namespace obtoy
