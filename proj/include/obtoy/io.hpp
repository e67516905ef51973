#pragma once

// File emission: run/sweep/rate CSVs, binary state checkpoints, and
// grayscale portable-graymap renderings of scalar fields.

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "obtoy/config_parse.hpp"
#include "obtoy/experiments.hpp"

namespace obtoy {

inline constexpr const char* version_string = "obtoy 1.0.0";
inline constexpr char checkpoint_magic[6] = {'O', 'B', 'T', 'O', 'Y', '1'};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline void put_f64(std::ostream& os, double x) {
    std::uint64_t v;
    static_assert(sizeof(v) == sizeof(x));
    std::memcpy(&v, &x, 8);
    put_u64(os, v);
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

inline std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

inline double get_f64(std::istream& is) {
    const std::uint64_t v = get_u64(is);
    double x;
    std::memcpy(&x, &v, 8);
    return x;
}

inline std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
    std::ofstream os(path, mode);
    if (!os) throw IoError("cannot open for writing: " + path);
    return os;
}

}  // namespace detail

inline void write_runs_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records, bool extended) {
    std::ofstream os = detail::open_out(path);
    os << "t,l2_u,l2_tau,h1_u,h1_tau,linf_omega,energy,energy_residual";
    if (extended) os << ",besov_u,besov_tau,gamma_linf";
    os << "\n";
    for (const DiagnosticsRecord& r : records) {
        os << fmt_double(r.t) << ',' << fmt_double(r.l2_u) << ',' << fmt_double(r.l2_tau) << ','
           << fmt_double(r.h1_u) << ',' << fmt_double(r.h1_tau) << ','
           << fmt_double(r.linf_omega) << ',' << fmt_double(r.energy) << ','
           << fmt_double(r.energy_residual);
        if (extended)
            os << ',' << fmt_double(r.besov_u.value_or(0.0)) << ','
               << fmt_double(r.besov_tau.value_or(0.0)) << ','
               << fmt_double(r.gamma_linf.value_or(0.0));
        os << "\n";
    }
    if (!os) throw IoError("write failed: " + path);
}

inline void write_sweep_csv(const std::string& path, const SweepResult& result) {
    std::ofstream os = detail::open_out(path);
    os << "a,linf_diff,linf_diff_u1,linf_diff_u2,linf_diff_t1,linf_diff_t2,ratio_to_prev\n";
    for (const SweepRow& r : result.rows) {
        os << fmt_double(r.a) << ',' << fmt_double(r.linf_diff) << ',' << fmt_double(r.diff_u1)
           << ',' << fmt_double(r.diff_u2) << ',' << fmt_double(r.diff_t1) << ','
           << fmt_double(r.diff_t2) << ',' << fmt_double(r.ratio_to_prev) << "\n";
    }
    if (!os) throw IoError("write failed: " + path);
}

// a, gap rows; the fitted slope appears on the last row only
inline void write_rate_csv(const std::string& path,
                           const std::vector<std::pair<double, double>>& pairs, double slope) {
    std::ofstream os = detail::open_out(path);
    os << "a,gap,fitted_slope\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        os << fmt_double(pairs[i].first) << ',' << fmt_double(pairs[i].second) << ',';
        if (i + 1 == pairs.size()) os << fmt_double(slope);
        os << "\n";
    }
    if (!os) throw IoError("write failed: " + path);
}

struct CheckpointMeta {
    std::uint64_t step = 0;
    double t = 0.0;
    double a = 0.0;
    double dt = 0.0;
};

// Layout: magic "OBTOY1"; LE u32 nx, ny; u64 step; f64 t, a, dt; then the
// planes u1, u2, tau1, tau2, each nx*ny complex values as interleaved f64
// (re, im), k1 outer from -nx/2, k2 fastest from -ny/2.
inline void write_checkpoint(const std::string& path, const State& s,
                             const CheckpointMeta& meta) {
    std::ofstream os = detail::open_out(path, std::ios::binary);
    const Grid& g = *s.grid();
    os.write(checkpoint_magic, sizeof(checkpoint_magic));
    detail::put_u32(os, std::uint32_t(g.nx()));
    detail::put_u32(os, std::uint32_t(g.ny()));
    detail::put_u64(os, meta.step);
    detail::put_f64(os, meta.t);
    detail::put_f64(os, meta.a);
    detail::put_f64(os, meta.dt);
    for (const SpectralField* f : {&s.u.u1, &s.u.u2, &s.tau.t1, &s.tau.t2})
        for (int k1 = -g.nx() / 2; k1 < g.nx() / 2; ++k1)
            for (int k2 = -g.ny() / 2; k2 < g.ny() / 2; ++k2) {
                const cplx z = f->c[g.index_of_mode(k1, k2)];
                detail::put_f64(os, z.real());
                detail::put_f64(os, z.imag());
            }
    if (!os) throw IoError("write failed: " + path);
}

inline std::pair<State, CheckpointMeta> read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open checkpoint: " + path);
    char magic[6];
    is.read(magic, 6);
    if (!is || std::memcmp(magic, checkpoint_magic, 6) != 0)
        throw IoError("corrupt checkpoint (bad magic): " + path);
    const std::uint32_t nx = detail::get_u32(is);
    const std::uint32_t ny = detail::get_u32(is);
    if (!is || nx % 2 != 0 || ny % 2 != 0 || nx < 8 || nx > 4096 || ny < 8 || ny > 4096)
        throw IoError("corrupt checkpoint (bad grid size): " + path);
    CheckpointMeta meta;
    meta.step = detail::get_u64(is);
    meta.t = detail::get_f64(is);
    meta.a = detail::get_f64(is);
    meta.dt = detail::get_f64(is);
    GridPtr grid = make_grid(int(nx), int(ny));
    State s(grid);
    s.t = meta.t;
    for (SpectralField* f : {&s.u.u1, &s.u.u2, &s.tau.t1, &s.tau.t2})
        for (int k1 = -int(nx) / 2; k1 < int(nx) / 2; ++k1)
            for (int k2 = -int(ny) / 2; k2 < int(ny) / 2; ++k2) {
                const double re = detail::get_f64(is);
                const double im = detail::get_f64(is);
                f->c[grid->index_of_mode(k1, k2)] = cplx(re, im);
            }
    if (!is) throw IoError("corrupt checkpoint (truncated): " + path);
    is.peek();
    if (!is.eof()) throw IoError("corrupt checkpoint (trailing bytes): " + path);
    return {std::move(s), meta};
}

// Binary P5 graymap, width nx, height ny, rows from y = 0, linear min-max
// mapping to 0..255 (all-128 when the range degenerates); the data range
// is recorded in the comment line.
inline void write_field_image(const SpectralField& f, const std::string& path) {
    const PhysicalField p = to_physical(f);
    const Grid& g = *f.grid;
    double lo = p.v[0], hi = p.v[0];
    for (double v : p.v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::ofstream os = detail::open_out(path, std::ios::binary);
    os << "P5\n# min=" << fmt_double(lo) << " max=" << fmt_double(hi) << "\n"
       << g.nx() << ' ' << g.ny() << "\n255\n";
    std::vector<unsigned char> row(std::size_t(g.nx()));
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double v = p.at(i, j);
            row[std::size_t(i)] =
                hi > lo ? (unsigned char)std::lround((v - lo) / (hi - lo) * 255.0)
                        : (unsigned char)128;
        }
        os.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
    }
    if (!os) throw IoError("write failed: " + path);
}

// Raw sample dump companion to the graymap: LE u32 nx, ny then f64 samples,
// y-major rows from y = 0 like the image.
inline void write_field_grid(const PhysicalField& p, const std::string& path) {
    const Grid& g = *p.grid;
    std::ofstream os = detail::open_out(path, std::ios::binary);
    detail::put_u32(os, std::uint32_t(g.nx()));
    detail::put_u32(os, std::uint32_t(g.ny()));
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) detail::put_f64(os, p.at(i, j));
    if (!os) throw IoError("write failed: " + path);
}

struct RunManifest {
    std::string config_echo;
    std::string version = version_string;
    double duration_s = 0.0;
    std::vector<std::string> outputs;
    std::string status = "ok";
    // sign convention of the structural-variable diagnostic
    std::string gamma_convention = "R tau multiplier (-2 k1 k2, k1^2 - k2^2)/|k|^2; Gamma = omega - R tau";
};

inline void write_manifest(const RunManifest& m, const std::string& path) {
    nlohmann::json j;
    j["config"] = m.config_echo;
    j["version"] = m.version;
    j["duration_s"] = m.duration_s;
    j["outputs"] = m.outputs;
    j["status"] = m.status;
    j["gamma_convention"] = m.gamma_convention;
    std::ofstream os = detail::open_out(path);
    os << j.dump(2) << "\n";
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace obtoy
