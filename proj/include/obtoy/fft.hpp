#pragma once

// FFTW-backed transforms between physical samples and full-lattice
// spectra. Forward is unnormalized; the inverse carries the 1/(nx*ny)
// factor. Plans are cached per grid size and created with FFTW_ESTIMATE,
// which keeps plan selection (and therefore output bits) reproducible
// across processes on one build.

#include <fftw3.h>

#include <mutex>
#include <unordered_map>

#include "obtoy/field.hpp"

namespace obtoy {

namespace detail {

class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    struct Plans {
        fftw_plan forward;
        fftw_plan backward;
    };

    Plans get(int nx, int ny) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = (std::uint64_t(std::uint32_t(nx)) << 32) | std::uint32_t(ny);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        // planning buffers; execution uses the new-array interface
        std::vector<cplx> a(std::size_t(nx) * ny), b(std::size_t(nx) * ny);
        Plans p;
        p.forward = fftw_plan_dft_2d(nx, ny, reinterpret_cast<fftw_complex*>(a.data()),
                                     reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.backward = fftw_plan_dft_2d(nx, ny, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::unordered_map<std::uint64_t, Plans> plans_;
};

inline void execute(fftw_plan plan, const cplx* in, cplx* out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace detail

inline void forward_raw(const Grid& g, const cplx* in, cplx* out) {
    detail::execute(detail::PlanCache::instance().get(g.nx(), g.ny()).forward, in, out);
}

inline void backward_raw(const Grid& g, const cplx* in, cplx* out) {
    detail::execute(detail::PlanCache::instance().get(g.nx(), g.ny()).backward, in, out);
}

inline SpectralField to_spectral(const PhysicalField& f) {
    SpectralField out(f.grid);
    if (f.v.size() != f.grid->size()) throw std::invalid_argument("sample count != grid size");
    std::vector<cplx> in(f.v.begin(), f.v.end());
    forward_raw(*f.grid, in.data(), out.c.data());
    return out;
}

inline PhysicalField to_physical(const SpectralField& f) {
    PhysicalField out(f.grid);
    if (f.c.size() != f.grid->size()) throw std::invalid_argument("coeff count != grid size");
    std::vector<cplx> tmp(f.grid->size());
    backward_raw(*f.grid, f.c.data(), tmp.data());
    const double scale = 1.0 / double(f.grid->size());
    for (std::size_t n = 0; n < tmp.size(); ++n) out.v[n] = tmp[n].real() * scale;
    return out;
}

// Two real-origin spectra per complex transform: ifft(fh + i*gh) = f + i*g.
// Used in the time-stepping hot loop; identical math to two separate
// inverse transforms up to roundoff.
inline void to_physical_pair(const Grid& g, const cplx* fh, const cplx* gh, double* f, double* v,
                             cplx* scratch_in, cplx* scratch_out) {
    const std::size_t n = g.size();
    for (std::size_t m = 0; m < n; ++m)
        scratch_in[m] = fh[m] + cplx(0.0, 1.0) * gh[m];
    backward_raw(g, scratch_in, scratch_out);
    const double scale = 1.0 / double(n);
    for (std::size_t m = 0; m < n; ++m) {
        f[m] = scratch_out[m].real() * scale;
        v[m] = scratch_out[m].imag() * scale;
    }
}

// Inverse of the packing: fft(f + i*g) splits into the two Hermitian parts.
inline void to_spectral_pair(const Grid& g, const double* f, const double* v, cplx* fh, cplx* gh,
                             cplx* scratch_in, cplx* scratch_out) {
    const std::size_t n = g.size();
    for (std::size_t m = 0; m < n; ++m) scratch_in[m] = cplx(f[m], v[m]);
    forward_raw(g, scratch_in, scratch_out);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
            const std::size_t idx = g.index(i, j);
            const cplx h = scratch_out[idx];
            const cplx hc = std::conj(scratch_out[g.conj_index(i, j)]);
            fh[idx] = 0.5 * (h + hc);
            gh[idx] = cplx(0.0, -0.5) * (h - hc);
        }
}

}  // namespace obtoy
