#pragma once

// Spectral derivatives, mode truncation, and the Fourier-space Leray
// projection.

#include <utility>

#include "obtoy/field.hpp"

namespace obtoy {

inline SpectralField derivative(const SpectralField& f, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
    const Grid& g = *f.grid;
    SpectralField out(f.grid);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const double k = axis == 1 ? g.kdx(i) : g.kdy(j);
            out.c[g.index(i, j)] = cplx(0.0, k) * f.c[g.index(i, j)];
        }
    return out;
}

// Pi_N: zero modes with |k|_inf > n. Idempotent.
inline SpectralField truncate(const SpectralField& f, int n) {
    const Grid& g = *f.grid;
    if (n < 0 || n > std::min(g.nx(), g.ny()) / 2)
        throw std::invalid_argument("truncation bound out of range");
    SpectralField out = f;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            if (std::max(std::abs(g.kx(i)), std::abs(g.ky(j))) > n) out.c[g.index(i, j)] = cplx{};
    return out;
}

inline void truncate_inplace(const Grid& g, cplx* c, int n) {
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            if (std::max(std::abs(g.kx(i)), std::abs(g.ky(j))) > n) c[g.index(i, j)] = cplx{};
}

// Per-mode projection coefficients (pxx, pxy, pyy) for v - k (k.v)/|k|^2,
// built from the derivative wavenumbers so the projected field is
// divergence-free in the code's own derivative operator. Off the Nyquist
// rows this is exactly the true-k projection; on them the zeroed
// derivative multiplier keeps the output conjugate-symmetric. The mean
// mode passes through.
struct LerayPlanes {
    std::vector<double> pxx, pxy, pyy;

    explicit LerayPlanes(const Grid& g)
        : pxx(g.size(), 1.0), pxy(g.size(), 0.0), pyy(g.size(), 1.0) {
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j) {
                const double k1 = g.kdx(i), k2 = g.kdy(j);
                const double k2n = k1 * k1 + k2 * k2;
                if (k2n == 0.0) continue;
                const std::size_t idx = g.index(i, j);
                pxx[idx] = 1.0 - k1 * k1 / k2n;
                pxy[idx] = -k1 * k2 / k2n;
                pyy[idx] = 1.0 - k2 * k2 / k2n;
            }
    }

    void apply(const Grid& g, cplx* v1, cplx* v2) const {
        for (std::size_t m = 0; m < g.size(); ++m) {
            const cplx a = v1[m], b = v2[m];
            v1[m] = pxx[m] * a + pxy[m] * b;
            v2[m] = pxy[m] * a + pyy[m] * b;
        }
    }
};

inline std::pair<SpectralField, SpectralField> leray_project(const SpectralField& v1,
                                                             const SpectralField& v2) {
    require_same_grid(v1, v2);
    const Grid& g = *v1.grid;
    SpectralField o1 = v1, o2 = v2;
    LerayPlanes(g).apply(g, o1.c.data(), o2.c.data());
    return {std::move(o1), std::move(o2)};
}

// max_k |k . v(k)| with the derivative wavenumbers (discrete divergence)
inline double max_mode_divergence(const SpectralField& v1, const SpectralField& v2) {
    require_same_grid(v1, v2);
    const Grid& g = *v1.grid;
    double worst = 0.0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const std::size_t idx = g.index(i, j);
            worst = std::max(worst, std::abs(g.kdx(i) * v1.c[idx] + g.kdy(j) * v2.c[idx]));
        }
    return worst;
}

// sqrt(sum |c|^2) over the lattice (no measure factors)
inline double spectral_l2(const SpectralField& f) {
    double s = 0.0;
    for (const cplx& z : f.c) s += std::norm(z);
    return std::sqrt(s);
}

inline double spectral_l2_pair(const SpectralField& a, const SpectralField& b) {
    double s = 0.0;
    for (const cplx& z : a.c) s += std::norm(z);
    for (const cplx& z : b.c) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace obtoy
