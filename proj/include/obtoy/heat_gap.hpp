#pragma once

// Vanishing-damping gap of the damped heat equation
//   d_t f - Laplace f + a f = 0,
// i.e. sup over t of || (1 - e^{-at}) e^{t Laplace} f_0 ||_{L^2}, for a
// discrete mode set (torus) and for the indicator-spectrum data on R^2.
// The torus gap closes like O(a); the continuum gap like O(a^{1/2}).

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "obtoy/grid.hpp"

namespace obtoy {

inline double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 int iters = 200) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters && (b - a) > 1e-14 * (std::abs(b) + 1.0); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// spectrum: (|k|, amplitude) pairs, |k| >= 1 (mean-free data)
inline double heat_gap_discrete(const std::vector<std::pair<double, double>>& spectrum,
                                double a) {
    if (spectrum.empty()) throw std::invalid_argument("heat_gap_discrete: empty spectrum");
    if (!(a > 0.0) || a > 1.0) throw std::invalid_argument("heat_gap_discrete: a must be in (0, 1]");
    for (const auto& [k, amp] : spectrum) {
        (void)amp;
        if (!(k > 0.0))
            throw std::invalid_argument("heat_gap_discrete: spectrum must be mean-free (|k| >= 1)");
    }
    auto gap = [&](double t) {
        double s = 0.0;
        for (const auto& [k, amp] : spectrum) s += amp * amp * std::exp(-2.0 * k * k * t);
        return (1.0 - std::exp(-a * t)) * std::sqrt(s);
    };
    // per-mode optima: e^{-a t}(a + mu) = mu  =>  t = log((a + mu)/mu)/a
    double best = 0.0;
    for (const auto& [k, amp] : spectrum) {
        (void)amp;
        const double mu = k * k;
        best = std::max(best, gap(std::log((a + mu) / mu) / a));
    }
    best = std::max(best, gap(golden_section_max(gap, 0.0, 50.0 / a)));
    return best;
}

// radial Simpson quadrature of the disc integral int_{|xi|<=1} e^{-2|xi|^2 t}
inline double heat_disc_integral(double t, int quad_n) {
    if (quad_n < 2) throw std::invalid_argument("quadrature resolution must be >= 2");
    if (quad_n % 2 != 0) ++quad_n;
    const double h = 1.0 / quad_n;
    auto f = [&](double r) { return r * std::exp(-2.0 * r * r * t); };
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < quad_n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
    return two_pi * s * h / 3.0;
}

inline double heat_gap_continuum(double a, int quad_n = 512) {
    if (!(a > 0.0) || a > 1.0)
        throw std::invalid_argument("heat_gap_continuum: a must be in (0, 1]");
    auto gap = [&](double t) {
        return (1.0 - std::exp(-a * t)) * std::sqrt(heat_disc_integral(t, quad_n));
    };
    // coarse log-spaced scan seeds the 1D maximization
    double best_t = 1.0, best = gap(1.0);
    const double hi = 50.0 / a;
    for (double t = 1e-3; t <= hi; t *= 1.5) {
        const double v = gap(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    const double t_ref = golden_section_max(gap, best_t / 2.0, std::min(best_t * 2.0, hi));
    return std::max(best, gap(t_ref));
}

// ordinary least-squares slope of log(gap) against log(a)
inline double rate_fit(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3) throw std::invalid_argument("rate_fit needs at least 3 pairs");
    double sx = 0.0, sy = 0.0;
    for (const auto& [a, gp] : pairs) {
        if (!(a > 0.0) || !(gp > 0.0))
            throw std::invalid_argument("rate_fit needs positive entries");
        sx += std::log(a);
        sy += std::log(gp);
    }
    const double mx = sx / double(pairs.size()), my = sy / double(pairs.size());
    double num = 0.0, den = 0.0;
    for (const auto& [a, gp] : pairs) {
        const double dx = std::log(a) - mx;
        num += dx * (std::log(gp) - my);
        den += dx * dx;
    }
    return num / den;
}

}  // namespace obtoy
