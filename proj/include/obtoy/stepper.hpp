#pragma once

// Semi-implicit schemes for the two toy models. Per step, the stress
// diffusion and damping are implicit:
//
//   tau_{n+1} = [tau_n + dt (F(u_n) - adv(u_n,tau_n) - Q(w_n,tau_n))]
//               / (1 + dt (|k|^2 + a))        (per Fourier mode)
//   u_{n+1}   = u_n + dt P [G(tau_{n+1}) - adv(u_n,u_n)]
//
// with F, G the exchange forcings, P the Leray projection, and the
// transport/coupling terms absent in the linear model. The run driver
// advances to t_end (final step shortened to the remainder), emits
// diagnostics every record_every steps and at t_end, and aborts loudly
// when the state leaves the finite range.

#include <functional>
#include <sstream>

#include "obtoy/diagnostics.hpp"
#include "obtoy/initial_conditions.hpp"

namespace obtoy {

namespace detail {

inline cplx imul(double k, cplx z) { return {-k * z.imag(), k * z.real()}; }

inline std::vector<double> implicit_inverse_plane(const Grid& g, double dt, double a) {
    std::vector<double> inv(g.size());
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            inv[g.index(i, j)] = 1.0 / (1.0 + dt * (g.k2(i, j) + a));
    return inv;
}

}  // namespace detail

class LinearStepKernel {
  public:
    LinearStepKernel(GridPtr grid, double dt, double a)
        : grid_(std::move(grid)),
          dt_(dt),
          inv_(detail::implicit_inverse_plane(*grid_, dt, a)),
          proj_(*grid_) {}

    double dt() const { return dt_; }

    void step(State& s) const {
        const Grid& g = *grid_;
        cplx* u1 = s.u.u1.c.data();
        cplx* u2 = s.u.u2.c.data();
        cplx* t1 = s.tau.t1.c.data();
        cplx* t2 = s.tau.t2.c.data();
        for (int i = 0; i < g.nx(); ++i) {
            const double kd1 = g.kdx(i);
            for (int j = 0; j < g.ny(); ++j) {
                const double kd2 = g.kdy(j);
                const std::size_t idx = g.index(i, j);
                const cplx U1 = u1[idx], U2 = u2[idx];
                const cplx f1 = 2.0 * detail::imul(kd1, U1);
                const cplx f2 = detail::imul(kd1, U2) + detail::imul(kd2, U1);
                const cplx T1 = (t1[idx] + dt_ * f1) * inv_[idx];
                const cplx T2 = (t2[idx] + dt_ * f2) * inv_[idx];
                t1[idx] = T1;
                t2[idx] = T2;
                const cplx g1 = detail::imul(kd1, T1) + detail::imul(kd2, T2);
                const cplx g2 = detail::imul(kd1, T2) - detail::imul(kd2, T1);
                u1[idx] = U1 + dt_ * (proj_.pxx[idx] * g1 + proj_.pxy[idx] * g2);
                u2[idx] = U2 + dt_ * (proj_.pxy[idx] * g1 + proj_.pyy[idx] * g2);
            }
        }
        s.t += dt_;
    }

  private:
    GridPtr grid_;
    double dt_;
    std::vector<double> inv_;
    LerayPlanes proj_;
};

class NonlinearStepKernel {
  public:
    NonlinearStepKernel(GridPtr grid, double dt, double a, int dealias_kmax, QFormula q_formula)
        : grid_(std::move(grid)),
          dt_(dt),
          kmax_(dealias_kmax),
          q_formula_(q_formula),
          inv_(detail::implicit_inverse_plane(*grid_, dt, a)),
          proj_(*grid_) {
        const std::size_t n = grid_->size();
        for (auto* b : {&u1p_, &u2p_, &wp_, &t1p_, &t2p_, &d1a_, &d2a_, &d1b_, &d2b_, &pa_, &pb_})
            b->assign(n, 0.0);
        for (auto* b : {&sa_, &sb_, &sc_, &sd_, &se_, &sf_}) b->assign(n, cplx{});
    }

    double dt() const { return dt_; }

    void step(State& s) {
        const Grid& g = *grid_;
        const std::size_t n = g.size();
        cplx* u1 = s.u.u1.c.data();
        cplx* u2 = s.u.u2.c.data();
        cplx* t1 = s.tau.t1.c.data();
        cplx* t2 = s.tau.t2.c.data();

        // physical u, omega, tau
        to_physical_pair(g, u1, u2, u1p_.data(), u2p_.data(), sa_.data(), sb_.data());
        curl_into(g, u1, u2, sc_.data());
        to_physical_pair(g, sc_.data(), t1, wp_.data(), t1p_.data(), sa_.data(), sb_.data());
        // physical grad tau
        deriv_into(g, t2, 1, sc_.data());
        to_physical_pair(g, t2, sc_.data(), t2p_.data(), d1b_.data(), sa_.data(), sb_.data());
        deriv_into(g, t1, 1, sc_.data());
        deriv_into(g, t1, 2, sd_.data());
        to_physical_pair(g, sc_.data(), sd_.data(), d1a_.data(), d2a_.data(), sa_.data(),
                         sb_.data());
        deriv_into(g, t2, 2, sc_.data());
        single_physical(g, sc_.data(), d2b_.data());

        // adv(u,tau) and Q, forward-transformed and dealiased
        for (std::size_t m = 0; m < n; ++m) {
            pa_[m] = u1p_[m] * d1a_[m] + u2p_[m] * d2a_[m];
            pb_[m] = u1p_[m] * d1b_[m] + u2p_[m] * d2b_[m];
        }
        to_spectral_pair(g, pa_.data(), pb_.data(), sc_.data(), sd_.data(), sa_.data(),
                         sb_.data());
        if (q_formula_ == QFormula::printed) {
            for (std::size_t m = 0; m < n; ++m) {
                pa_[m] = -2.0 * wp_[m] * t2p_[m];
                pb_[m] = wp_[m] * (t1p_[m] - t2p_[m]);
            }
        } else {
            for (std::size_t m = 0; m < n; ++m) {
                pa_[m] = wp_[m] * t2p_[m];
                pb_[m] = -wp_[m] * t1p_[m];
            }
        }
        to_spectral_pair(g, pa_.data(), pb_.data(), se_.data(), sf_.data(), sa_.data(),
                         sb_.data());
        dealias(g, sc_.data());
        dealias(g, sd_.data());
        dealias(g, se_.data());
        dealias(g, sf_.data());

        // tau update
        for (int i = 0; i < g.nx(); ++i) {
            const double kd1 = g.kdx(i);
            for (int j = 0; j < g.ny(); ++j) {
                const double kd2 = g.kdy(j);
                const std::size_t idx = g.index(i, j);
                const cplx f1 = 2.0 * detail::imul(kd1, u1[idx]);
                const cplx f2 = detail::imul(kd1, u2[idx]) + detail::imul(kd2, u1[idx]);
                t1[idx] = (t1[idx] + dt_ * (f1 - sc_[idx] - se_[idx])) * inv_[idx];
                t2[idx] = (t2[idx] + dt_ * (f2 - sd_[idx] - sf_[idx])) * inv_[idx];
            }
        }

        // adv(u,u)
        deriv_into(g, u1, 1, sc_.data());
        deriv_into(g, u1, 2, sd_.data());
        to_physical_pair(g, sc_.data(), sd_.data(), d1a_.data(), d2a_.data(), sa_.data(),
                         sb_.data());
        deriv_into(g, u2, 1, sc_.data());
        deriv_into(g, u2, 2, sd_.data());
        to_physical_pair(g, sc_.data(), sd_.data(), d1b_.data(), d2b_.data(), sa_.data(),
                         sb_.data());
        for (std::size_t m = 0; m < n; ++m) {
            pa_[m] = u1p_[m] * d1a_[m] + u2p_[m] * d2a_[m];
            pb_[m] = u1p_[m] * d1b_[m] + u2p_[m] * d2b_[m];
        }
        to_spectral_pair(g, pa_.data(), pb_.data(), sc_.data(), sd_.data(), sa_.data(),
                         sb_.data());
        dealias(g, sc_.data());
        dealias(g, sd_.data());

        // velocity update
        for (int i = 0; i < g.nx(); ++i) {
            const double kd1 = g.kdx(i);
            for (int j = 0; j < g.ny(); ++j) {
                const double kd2 = g.kdy(j);
                const std::size_t idx = g.index(i, j);
                const cplx g1 =
                    detail::imul(kd1, t1[idx]) + detail::imul(kd2, t2[idx]) - sc_[idx];
                const cplx g2 =
                    detail::imul(kd1, t2[idx]) - detail::imul(kd2, t1[idx]) - sd_[idx];
                u1[idx] += dt_ * (proj_.pxx[idx] * g1 + proj_.pxy[idx] * g2);
                u2[idx] += dt_ * (proj_.pxy[idx] * g1 + proj_.pyy[idx] * g2);
            }
        }
        s.t += dt_;
    }

  private:
    static void deriv_into(const Grid& g, const cplx* f, int axis, cplx* out) {
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j) {
                const std::size_t idx = g.index(i, j);
                out[idx] = detail::imul(axis == 1 ? g.kdx(i) : g.kdy(j), f[idx]);
            }
    }

    static void curl_into(const Grid& g, const cplx* v1, const cplx* v2, cplx* out) {
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j) {
                const std::size_t idx = g.index(i, j);
                out[idx] = detail::imul(g.kdx(i), v2[idx]) - detail::imul(g.kdy(j), v1[idx]);
            }
    }

    void single_physical(const Grid& g, const cplx* fh, double* out) {
        backward_raw(g, fh, sa_.data());
        const double scale = 1.0 / double(g.size());
        for (std::size_t m = 0; m < g.size(); ++m) out[m] = sa_[m].real() * scale;
    }

    void dealias(const Grid& g, cplx* c) const {
        if (kmax_ >= std::max(g.nx(), g.ny()) / 2) return;
        truncate_inplace(g, c, kmax_);
    }

    GridPtr grid_;
    double dt_;
    int kmax_;
    QFormula q_formula_;
    std::vector<double> inv_;
    LerayPlanes proj_;
    std::vector<double> u1p_, u2p_, wp_, t1p_, t2p_, d1a_, d2a_, d1b_, d2b_, pa_, pb_;
    std::vector<cplx> sa_, sb_, sc_, sd_, se_, sf_;
};

namespace detail {

inline void require_finite(const State& s, const char* who) {
    for (const auto* f : {&s.u.u1, &s.u.u2, &s.tau.t1, &s.tau.t2})
        for (const cplx& z : f->c)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw BlowupError(std::string(who) + ": non-finite value in state", -1);
}

// upper bound on the sup norms: sum_k |c(k)| / (nx*ny)
inline double amplitude_bound(const State& s) {
    double worst = 0.0;
    for (const auto* f : {&s.u.u1, &s.u.u2, &s.tau.t1, &s.tau.t2}) {
        double sum = 0.0;
        for (const cplx& z : f->c) sum += std::abs(z);
        worst = std::max(worst, sum / double(f->grid->size()));
    }
    return worst;
}

}  // namespace detail

inline State step_linear(const State& s, const SolverConfig& cfg) {
    if (cfg.model != ModelKind::linear)
        throw std::invalid_argument("step_linear needs cfg.model = linear");
    detail::require_finite(s, "step_linear");
    State out = s;
    LinearStepKernel(s.grid(), cfg.dt, cfg.a).step(out);
    return out;
}

inline State step_nonlinear(const State& s, const SolverConfig& cfg) {
    if (cfg.model != ModelKind::nonlinear)
        throw std::invalid_argument("step_nonlinear needs cfg.model = nonlinear");
    detail::require_finite(s, "step_nonlinear");
    State out = s;
    NonlinearStepKernel(s.grid(), cfg.dt, cfg.a, cfg.dealias_kmax(), cfg.q_formula).step(out);
    return out;
}

struct RunResult {
    State final_state;
    std::vector<DiagnosticsRecord> records;
    long steps = 0;
};

using RecordSink = std::function<void(const State&, const DiagnosticsRecord&)>;

// Fills the optional diagnostics columns (set by the besov/decay paths).
using RecordExtender = std::function<void(const State&, DiagnosticsRecord&)>;

inline RunResult run(const SolverConfig& cfg, const RecordSink& sink = {},
                     const RecordExtender& extend = {}) {
    cfg.validate();
    GridPtr grid = make_grid(cfg.nx, cfg.ny);
    State s = make_initial_state(cfg, grid);

    long n_full = long(std::floor(cfg.t_end / cfg.dt + 1e-9));
    double rem = cfg.t_end - double(n_full) * cfg.dt;
    if (rem < cfg.dt * 1e-9) rem = 0.0;
    const long n_total = n_full + (rem > 0.0 ? 1 : 0);

    const bool linear = cfg.model == ModelKind::linear;
    LinearStepKernel lin(grid, cfg.dt, cfg.a);
    std::unique_ptr<NonlinearStepKernel> nl;
    if (!linear)
        nl = std::make_unique<NonlinearStepKernel>(grid, cfg.dt, cfg.a, cfg.dealias_kmax(),
                                                   cfg.q_formula);

    RunResult result;
    auto emit = [&](const State& state, double residual) {
        DiagnosticsRecord r = norms(state);
        r.energy_residual = residual;
        if (extend) extend(state, r);
        if (sink) sink(state, r);
        result.records.push_back(r);
    };
    auto check_blowup = [&](long step) {
        const double bound = detail::amplitude_bound(s);
        if (!(bound < 1e8)) {
            std::ostringstream msg;
            msg << "blow-up detected at step " << step << " (t=" << s.t
                << "): amplitude bound " << bound;
            if (!result.records.empty()) {
                const DiagnosticsRecord& last = result.records.back();
                msg << "; last finite sample t=" << last.t << " l2_u=" << last.l2_u
                    << " l2_tau=" << last.l2_tau;
            }
            throw BlowupError(msg.str(), step);
        }
    };

    emit(s, 0.0);
    State prev(grid);
    for (long step = 1; step <= n_total; ++step) {
        const bool last = step == n_total;
        const bool record = step % cfg.record_every == 0 || last;
        const double step_dt = (last && rem > 0.0) ? rem : cfg.dt;
        if (record) prev = s;
        if (step_dt == cfg.dt) {
            linear ? lin.step(s) : nl->step(s);
        } else {
            if (linear) {
                LinearStepKernel(grid, step_dt, cfg.a).step(s);
            } else {
                NonlinearStepKernel(grid, step_dt, cfg.a, cfg.dealias_kmax(), cfg.q_formula)
                    .step(s);
            }
        }
        s.t = last ? cfg.t_end : double(step) * cfg.dt;
        if (record || step % 100 == 0) check_blowup(step);
        if (record) {
            prev.t = double(step - 1) * cfg.dt;
            emit(s, energy_residual(prev, s, cfg));
        }
    }
    result.final_state = std::move(s);
    result.steps = n_total;
    return result;
}

}  // namespace obtoy
