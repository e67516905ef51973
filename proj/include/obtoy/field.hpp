#pragma once

// Scalar fields on a Grid: physical samples and full-lattice Fourier
// coefficients. Conjugate symmetry of spectra is an invariant of fields
// originating from real samples, not a storage trick.

#include <complex>
#include <stdexcept>
#include <vector>

#include "obtoy/grid.hpp"

namespace obtoy {

using cplx = std::complex<double>;

struct PhysicalField {
    GridPtr grid;
    std::vector<double> v;

    PhysicalField() = default;
    explicit PhysicalField(GridPtr g) : grid(std::move(g)), v(grid->size(), 0.0) {}

    double& at(int i, int j) { return v[grid->index(i, j)]; }
    double at(int i, int j) const { return v[grid->index(i, j)]; }
};

struct SpectralField {
    GridPtr grid;
    std::vector<cplx> c;

    SpectralField() = default;
    explicit SpectralField(GridPtr g) : grid(std::move(g)), c(grid->size(), cplx{}) {}

    cplx& at(int i, int j) { return c[grid->index(i, j)]; }
    cplx at(int i, int j) const { return c[grid->index(i, j)]; }

    cplx& mode(int k1, int k2) { return c[grid->index_of_mode(k1, k2)]; }
    cplx mode(int k1, int k2) const { return c[grid->index_of_mode(k1, k2)]; }
};

inline void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!a.grid || !b.grid || !(*a.grid == *b.grid))
        throw std::invalid_argument("fields must share a grid");
}

// max over modes of |c(-k) - conj(c(k))|; 0 for fields of real origin
inline double conjugate_symmetry_defect(const SpectralField& f) {
    const Grid& g = *f.grid;
    double worst = 0.0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            cplx d = f.c[g.conj_index(i, j)] - std::conj(f.c[g.index(i, j)]);
            worst = std::max(worst, std::abs(d));
        }
    return worst;
}

}  // namespace obtoy
