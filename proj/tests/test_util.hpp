#pragma once

// Shared helpers for the test suites: deterministic random fields and
// field comparisons.

#include <random>

#include "obtoy/fft.hpp"
#include "obtoy/spectral_ops.hpp"

namespace obtoy::test {

inline PhysicalField random_samples(const GridPtr& grid, std::mt19937_64& rng,
                                    double amplitude = 1.0) {
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    PhysicalField f(grid);
    for (double& v : f.v) v = dist(rng);
    return f;
}

inline SpectralField random_field(const GridPtr& grid, std::mt19937_64& rng,
                                  double amplitude = 1.0) {
    return to_spectral(random_samples(grid, rng, amplitude));
}

// random field band-limited to |k|_inf <= kmax, mean-free if drop_mean
inline SpectralField random_smooth_field(const GridPtr& grid, std::mt19937_64& rng, int kmax,
                                         bool drop_mean = false) {
    SpectralField f = truncate(random_field(grid, rng), kmax);
    if (drop_mean) f.mode(0, 0) = cplx{};
    return f;
}

inline PhysicalField sample(const GridPtr& grid, const std::function<double(double, double)>& fn) {
    PhysicalField f(grid);
    const Grid& g = *grid;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) f.v[g.index(i, j)] = fn(g.x(i), g.y(j));
    return f;
}

inline double max_abs_diff(const PhysicalField& a, const PhysicalField& b) {
    double worst = 0.0;
    for (std::size_t m = 0; m < a.v.size(); ++m)
        worst = std::max(worst, std::abs(a.v[m] - b.v[m]));
    return worst;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
    double worst = 0.0;
    for (std::size_t m = 0; m < a.c.size(); ++m) worst = std::max(worst, std::abs(a.c[m] - b.c[m]));
    return worst;
}

inline double max_abs(const SpectralField& a) {
    double worst = 0.0;
    for (const cplx& z : a.c) worst = std::max(worst, std::abs(z));
    return worst;
}

}  // namespace obtoy::test
