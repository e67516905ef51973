// Command-line driver: simulation runs, damping sweeps, convergence
// ladders, vortex snapshot series, heat-gap rate reports, and Besov
// diagnostics, all configured from flat key-value files.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

#include "obtoy/io.hpp"

namespace fs = std::filesystem;
using namespace obtoy;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string time_tag(double t) {
    std::string s = fmt_double(t);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

struct Ctx {
    std::string config_path;
    std::string out_dir;
    bool seedless = true;
};

ParsedConfig load(const Ctx& ctx) {
    ParsedConfig pc = parse_config(slurp(ctx.config_path));
    if (!ctx.out_dir.empty()) pc.base.out_dir = ctx.out_dir;
    fs::create_directories(pc.base.out_dir);
    return pc;
}

void finish(const ParsedConfig& pc, RunManifest& manifest,
            std::chrono::steady_clock::time_point t0) {
    manifest.config_echo = write_config(pc);
    manifest.duration_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string path = (fs::path(pc.base.out_dir) / "manifest.json").string();
    write_manifest(manifest, path);
    std::cout << "wrote " << path << "\n";
}

int cmd_run(const Ctx& ctx, bool extended) {
    const auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = load(ctx);
    RunManifest manifest;
    RunResult rr;
    if (extended) {
        rr = run(pc.base, {}, [](const State& s, DiagnosticsRecord& r) {
            const double inf = std::numeric_limits<double>::infinity();
            r.besov_u = std::max(besov_norm(s.u.u1, 0.0, inf, 1.0),
                                 besov_norm(s.u.u2, 0.0, inf, 1.0));
            r.besov_tau = std::max(besov_norm(s.tau.t1, 0.0, inf, 1.0),
                                   besov_norm(s.tau.t2, 0.0, inf, 1.0));
            r.gamma_linf = linf_norm(gamma(s));
        });
    } else {
        rr = run(pc.base);
    }
    const fs::path out(pc.base.out_dir);
    const std::string csv = (out / "run.csv").string();
    write_runs_csv(csv, rr.records, extended);
    manifest.outputs.push_back(csv);
    const std::string ckpt = (out / "final.obt").string();
    write_checkpoint(ckpt, rr.final_state,
                     {std::uint64_t(rr.steps), rr.final_state.t, pc.base.a, pc.base.dt});
    manifest.outputs.push_back(ckpt);
    if (extended) {
        const std::string bcsv = (out / "blocks.csv").string();
        std::ofstream os(bcsv);
        if (!os) throw IoError("cannot open for writing: " + bcsv);
        os << "j,u1_l2,u2_l2,t1_l2,t2_l2,u1_linf,u2_linf,t1_linf,t2_linf\n";
        const State& s = rr.final_state;
        const double inf = std::numeric_limits<double>::infinity();
        BlockSpectrum b2[4] = {lp_blocks(s.u.u1, 2.0), lp_blocks(s.u.u2, 2.0),
                               lp_blocks(s.tau.t1, 2.0), lp_blocks(s.tau.t2, 2.0)};
        BlockSpectrum bi[4] = {lp_blocks(s.u.u1, inf), lp_blocks(s.u.u2, inf),
                               lp_blocks(s.tau.t1, inf), lp_blocks(s.tau.t2, inf)};
        for (int j = -1; j <= b2[0].jmax(); ++j) {
            os << j;
            for (const auto& b : b2) os << ',' << fmt_double(b.at(j));
            for (const auto& b : bi) os << ',' << fmt_double(b.at(j));
            os << "\n";
        }
        manifest.outputs.push_back(bcsv);
    }
    std::cout << "steps: " << rr.steps << ", final t = " << rr.final_state.t
              << ", energy = " << rr.records.back().energy << "\n";
    finish(pc, manifest, t0);
    return 0;
}

int cmd_sweep(const Ctx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = load(ctx);
    if (!pc.sweep) throw ConfigError("sweep needs a [sweep] section");
    SweepSpec spec;
    spec.base = pc.base;
    spec.a_values = pc.sweep->a_values;
    spec.dt_ref = pc.sweep->dt_ref;
    spec.compare_time = pc.sweep->compare_time.value_or(pc.base.t_end);
    SweepResult res = damping_sweep(spec);
    for (const SweepRow& r : res.rows)
        std::cout << "a = " << r.a << ": linf_diff = " << r.linf_diff
                  << " (ratio " << r.ratio_to_prev << ")\n";
    std::cout << "fitted slope: " << res.slope << "\n";
    RunManifest manifest;
    const std::string csv = (fs::path(pc.base.out_dir) / "sweep.csv").string();
    write_sweep_csv(csv, res);
    manifest.outputs.push_back(csv);
    finish(pc, manifest, t0);
    return 0;
}

int cmd_convergence(const Ctx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = load(ctx);
    if (!pc.convergence) throw ConfigError("convergence needs a [convergence] section");
    ConvergenceResult res = temporal_convergence(pc.base, pc.convergence->dt_ladder);
    RunManifest manifest;
    const std::string csv = (fs::path(pc.base.out_dir) / "convergence.csv").string();
    std::ofstream os(csv);
    if (!os) throw IoError("cannot open for writing: " + csv);
    os << "dt,error,fitted_order\n";
    for (std::size_t i = 0; i < res.dt.size(); ++i) {
        os << fmt_double(res.dt[i]) << ',' << fmt_double(res.error[i]) << ',';
        if (i + 1 == res.dt.size()) os << fmt_double(res.order);
        os << "\n";
        std::cout << "dt = " << res.dt[i] << ": error = " << res.error[i] << "\n";
    }
    std::cout << "fitted order: " << res.order << "\n";
    manifest.outputs.push_back(csv);
    finish(pc, manifest, t0);
    return 0;
}

int cmd_vortices(const Ctx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = load(ctx);
    std::vector<VortexSnapshot> snaps = vortex_dynamics(pc.base);
    RunManifest manifest;
    const fs::path out(pc.base.out_dir);
    const std::string csv = (out / "vortices.csv").string();
    std::ofstream os(csv);
    if (!os) throw IoError("cannot open for writing: " + csv);
    os << "t,enstrophy\n";
    for (const VortexSnapshot& snap : snaps) {
        const std::string base = "vorticity_t" + time_tag(snap.t);
        const std::string pgm = (out / (base + ".pgm")).string();
        const std::string dat = (out / (base + ".dat")).string();
        write_field_image(to_spectral(snap.vorticity), pgm);
        write_field_grid(snap.vorticity, dat);
        manifest.outputs.push_back(pgm);
        manifest.outputs.push_back(dat);
        const double ens = l2_norm(to_spectral(snap.vorticity));
        os << fmt_double(snap.t) << ',' << fmt_double(ens) << "\n";
        std::cout << "t = " << snap.t << ": enstrophy " << ens << " -> " << pgm << "\n";
    }
    manifest.outputs.push_back(csv);
    finish(pc, manifest, t0);
    return 0;
}

int cmd_heat_gap(const Ctx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = load(ctx);
    if (!pc.heat_gap) throw ConfigError("heat-gap needs a [heat-gap] section");
    const HeatGapSection& hg = *pc.heat_gap;
    std::vector<std::pair<double, double>> pairs;
    for (double a : hg.a_values) {
        const double gp = hg.mode == HeatGapMode::torus
                              ? heat_gap_discrete({{1.0, 1.0}}, a)
                              : heat_gap_continuum(a, hg.quadrature_n);
        pairs.emplace_back(a, gp);
        std::cout << "a = " << a << ": gap = " << gp << "\n";
    }
    const double slope = rate_fit(pairs);
    std::cout << "fitted slope: " << slope << "\n";
    RunManifest manifest;
    const std::string csv = (fs::path(pc.base.out_dir) / "rate.csv").string();
    write_rate_csv(csv, pairs, slope);
    manifest.outputs.push_back(csv);
    finish(pc, manifest, t0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral toy-model simulator on the periodic torus"};
    app.require_subcommand(1);

    Ctx ctx;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", ctx.config_path, "configuration file")->required();
        sub->add_option("--out", ctx.out_dir, "output directory (overrides out_dir)");
        sub->add_flag("--seedless", ctx.seedless, "deterministic mode (default; the only mode)");
    };

    CLI::App* c_run = app.add_subcommand("run", "integrate one configuration");
    CLI::App* c_sweep = app.add_subcommand("sweep", "damping sweep against an a=0 reference");
    CLI::App* c_conv = app.add_subcommand("convergence", "temporal convergence ladder");
    CLI::App* c_vort = app.add_subcommand("vortices", "Gaussian-vortex snapshot series");
    CLI::App* c_heat = app.add_subcommand("heat-gap", "damped-heat vanishing-damping rates");
    CLI::App* c_besov = app.add_subcommand("besov", "run with Besov/Gamma diagnostics");
    for (CLI::App* sub : {c_run, c_sweep, c_conv, c_vort, c_heat, c_besov}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_run->parsed()) return cmd_run(ctx, false);
        if (c_besov->parsed()) return cmd_run(ctx, true);
        if (c_sweep->parsed()) return cmd_sweep(ctx);
        if (c_conv->parsed()) return cmd_convergence(ctx);
        if (c_vort->parsed()) return cmd_vortices(ctx);
        if (c_heat->parsed()) return cmd_heat_gap(ctx);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BlowupError& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
