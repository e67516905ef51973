#pragma once

// Scripted studies: damping sweeps against an a = 0 reference, temporal
// convergence ladders, Gaussian-vortex snapshot series, and decay traces.

#include <future>
#include <limits>
#include <thread>

#include "obtoy/besov.hpp"
#include "obtoy/heat_gap.hpp"
#include "obtoy/stepper.hpp"

namespace obtoy {

struct SweepSpec {
    SolverConfig base;
    std::vector<double> a_values{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
    double dt_ref = 1e-6;
    double compare_time = 1.0;

    void validate() const {
        base.validate();
        if (!(dt_ref > 0.0) || dt_ref > base.dt)
            throw ConfigError("invalid value for \"dt_ref\": must be in (0, dt]");
        if (a_values.empty()) throw ConfigError("invalid value for \"a_values\": empty");
        for (std::size_t i = 0; i < a_values.size(); ++i) {
            if (!(a_values[i] > 0.0) || a_values[i] > 1.0)
                throw ConfigError("invalid value for \"a_values\": entries must be in (0, 1]");
            if (i > 0 && !(a_values[i] < a_values[i - 1]))
                throw ConfigError("invalid value for \"a_values\": must be strictly decreasing");
        }
        if (!(compare_time > 0.0))
            throw ConfigError("invalid value for \"compare_time\": must be positive");
    }
};

struct SweepRow {
    double a = 0.0;
    double linf_diff = 0.0;
    double diff_u1 = 0.0, diff_u2 = 0.0, diff_t1 = 0.0, diff_t2 = 0.0;
    double ratio_to_prev = 0.0;  // 0 on the first row
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double slope = 0.0;  // log-log slope of linf_diff against a
};

namespace detail {

inline double sup_diff(const SpectralField& f, const SpectralField& g) {
    SpectralField d = f;
    for (std::size_t m = 0; m < d.c.size(); ++m) d.c[m] -= g.c[m];
    return linf_norm(d);
}

// Concurrent map over independent runs, its results merged by rank
// order. Batches bound the number of live runs by the core count.
template <typename Fn>
inline std::vector<State> run_states(const std::vector<SolverConfig>& cfgs, Fn&& make_state) {
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<State> out(cfgs.size());
    std::size_t next = 0;
    while (next < cfgs.size()) {
        const std::size_t batch = std::min(workers, cfgs.size() - next);
        std::vector<std::future<State>> futures;
        futures.reserve(batch);
        for (std::size_t b = 0; b < batch; ++b)
            futures.push_back(std::async(std::launch::async, make_state, cfgs[next + b]));
        for (std::size_t b = 0; b < batch; ++b) out[next + b] = futures[b].get();
        next += batch;
    }
    return out;
}

}  // namespace detail

// One reference run (a = 0, dt_ref) and one comparison run per a value;
// difference = physical sup norm per component at t = compare_time.
inline SweepResult damping_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SolverConfig> cfgs;
    {
        SolverConfig ref = spec.base;
        ref.a = 0.0;
        ref.dt = spec.dt_ref;
        ref.t_end = spec.compare_time;
        ref.record_every = std::numeric_limits<int>::max();
        cfgs.push_back(ref);
    }
    for (double a : spec.a_values) {
        SolverConfig c = spec.base;
        c.a = a;
        c.t_end = spec.compare_time;
        c.record_every = std::numeric_limits<int>::max();
        cfgs.push_back(c);
    }
    std::vector<State> finals =
        detail::run_states(cfgs, [](const SolverConfig& c) { return run(c).final_state; });

    const State& ref = finals.front();
    SweepResult result;
    std::vector<std::pair<double, double>> fit_pairs;
    for (std::size_t i = 0; i < spec.a_values.size(); ++i) {
        const State& s = finals[i + 1];
        SweepRow row;
        row.a = spec.a_values[i];
        row.diff_u1 = detail::sup_diff(s.u.u1, ref.u.u1);
        row.diff_u2 = detail::sup_diff(s.u.u2, ref.u.u2);
        row.diff_t1 = detail::sup_diff(s.tau.t1, ref.tau.t1);
        row.diff_t2 = detail::sup_diff(s.tau.t2, ref.tau.t2);
        row.linf_diff = std::max({row.diff_u1, row.diff_u2, row.diff_t1, row.diff_t2});
        if (i > 0 && row.linf_diff > 0.0)
            row.ratio_to_prev = result.rows.back().linf_diff / row.linf_diff;
        if (row.linf_diff > 0.0) fit_pairs.emplace_back(row.a, row.linf_diff);
        result.rows.push_back(row);
    }
    result.slope = fit_pairs.size() >= 3 ? rate_fit(fit_pairs) : 0.0;
    return result;
}

struct ConvergenceResult {
    std::vector<double> dt;     // coarse rungs (reference rung excluded)
    std::vector<double> error;  // L-inf distance to the finest-rung run
    double order = 0.0;
};

// Self-referenced temporal order study: the finest rung is the reference,
// so the fitted order regresses log(error) on log(dt - dt_ref).
inline ConvergenceResult temporal_convergence(const SolverConfig& cfg,
                                              const std::vector<double>& ladder) {
    cfg.validate();
    if (ladder.size() < 3) throw ConfigError("invalid ladder: need at least 3 rungs");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0)) throw ConfigError("invalid ladder: entries must be positive");
        if (i > 0 && !(ladder[i] < ladder[i - 1]))
            throw ConfigError("invalid ladder: entries must be strictly decreasing");
    }
    std::vector<SolverConfig> cfgs;
    for (double dt : ladder) {
        SolverConfig c = cfg;
        c.dt = dt;
        c.record_every = std::numeric_limits<int>::max();
        cfgs.push_back(c);
    }
    std::vector<State> finals =
        detail::run_states(cfgs, [](const SolverConfig& c) { return run(c).final_state; });

    const State& ref = finals.back();
    const double dt_ref = ladder.back();
    ConvergenceResult result;
    std::vector<std::pair<double, double>> fit_pairs;
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const State& s = finals[i];
        const double err = std::max({detail::sup_diff(s.u.u1, ref.u.u1),
                                     detail::sup_diff(s.u.u2, ref.u.u2),
                                     detail::sup_diff(s.tau.t1, ref.tau.t1),
                                     detail::sup_diff(s.tau.t2, ref.tau.t2)});
        result.dt.push_back(ladder[i]);
        result.error.push_back(err);
        if (err > 0.0) fit_pairs.emplace_back(ladder[i] - dt_ref, err);
    }
    if (fit_pairs.size() >= 3) {
        result.order = rate_fit(fit_pairs);
    } else if (fit_pairs.size() == 2) {
        result.order = std::log(fit_pairs[0].second / fit_pairs[1].second) /
                       std::log(fit_pairs[0].first / fit_pairs[1].first);
    }
    return result;
}

struct VortexSnapshot {
    double t = 0.0;
    PhysicalField vorticity;
};

// Vorticity snapshots at every recorded sample of a Gaussian-vortex run.
inline std::vector<VortexSnapshot> vortex_dynamics(const SolverConfig& cfg) {
    if (cfg.ic != IcKind::gaussian)
        throw ConfigError("invalid value for \"ic\": vortex dynamics needs ic = gaussian");
    std::vector<VortexSnapshot> snaps;
    run(cfg, [&](const State& s, const DiagnosticsRecord& r) {
        snaps.push_back({r.t, to_physical(vorticity(s.u))});
    });
    return snaps;
}

// Record series with the Besov and Gamma columns filled at every sample.
inline std::vector<DiagnosticsRecord> decay_trace(const SolverConfig& cfg) {
    RunResult rr = run(cfg, {}, [](const State& s, DiagnosticsRecord& r) {
        r.besov_u = std::max(besov_norm(s.u.u1, 0.0, std::numeric_limits<double>::infinity(), 1.0),
                             besov_norm(s.u.u2, 0.0, std::numeric_limits<double>::infinity(), 1.0));
        r.besov_tau =
            std::max(besov_norm(s.tau.t1, 0.0, std::numeric_limits<double>::infinity(), 1.0),
                     besov_norm(s.tau.t2, 0.0, std::numeric_limits<double>::infinity(), 1.0));
        r.gamma_linf = linf_norm(gamma(s));
    });
    return rr.records;
}

}  // namespace obtoy
