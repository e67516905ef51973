#pragma once

// Littlewood-Paley blocks with sharp Fourier cutoffs: Delta_{-1} gathers
// |k| <= 1 and Delta_j gathers 2^j < |k| <= 2^{j+1} (Euclidean |k|), so
// the blocks partition the lattice exactly and sum back to the field.

#include "obtoy/diagnostics.hpp"

namespace obtoy {

inline int shell_index(int k1, int k2) {
    const double r = std::hypot(double(k1), double(k2));
    if (r <= 1.0) return -1;
    int j = 0;
    while (std::exp2(j + 1) < r) ++j;
    return j;  // 2^j < r <= 2^{j+1}
}

inline int max_shell_index(const Grid& g) {
    return shell_index(-g.nx() / 2, -g.ny() / 2);
}

inline SpectralField block_field(const SpectralField& f, int j) {
    const Grid& g = *f.grid;
    SpectralField out(f.grid);
    for (int i = 0; i < g.nx(); ++i)
        for (int jj = 0; jj < g.ny(); ++jj)
            if (shell_index(g.kx(i), g.ky(jj)) == j)
                out.c[g.index(i, jj)] = f.c[g.index(i, jj)];
    return out;
}

struct BlockSpectrum {
    std::vector<double> norm;  // index 0 holds j = -1

    int jmax() const { return int(norm.size()) - 2; }
    double at(int j) const { return norm[std::size_t(j + 1)]; }
};

inline BlockSpectrum lp_blocks(const SpectralField& f, double p) {
    if (p != 2.0 && !std::isinf(p)) throw std::invalid_argument("block norms support p = 2, inf");
    const int jmax = max_shell_index(*f.grid);
    BlockSpectrum spec;
    spec.norm.assign(std::size_t(jmax + 2), 0.0);
    if (p == 2.0) {
        const Grid& g = *f.grid;
        std::vector<double> s(spec.norm.size(), 0.0);
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j)
                s[std::size_t(shell_index(g.kx(i), g.ky(j)) + 1)] +=
                    std::norm(f.c[g.index(i, j)]);
        for (std::size_t m = 0; m < s.size(); ++m)
            spec.norm[m] = two_pi * std::sqrt(s[m]) / double(g.size());
    } else {
        for (int j = -1; j <= jmax; ++j)
            spec.norm[std::size_t(j + 1)] = linf_norm(block_field(f, j));
    }
    return spec;
}

// ||u||_{B^s_{p,r}} = || (2^{js} ||Delta_j u||_{L^p})_j ||_{l^r}, r in {1, inf}
inline double besov_norm(const SpectralField& f, double s, double p, double r) {
    if (r != 1.0 && !std::isinf(r)) throw std::invalid_argument("besov_norm supports r = 1, inf");
    const BlockSpectrum spec = lp_blocks(f, p);
    double acc = 0.0;
    for (int j = -1; j <= spec.jmax(); ++j) {
        const double w = std::exp2(double(j) * s) * spec.at(j);
        acc = (r == 1.0) ? acc + w : std::max(acc, w);
    }
    return acc;
}

}  // namespace obtoy
