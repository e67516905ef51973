#pragma once

#include <cmath>
#include <string>

#include "obtoy/errors.hpp"
#include "obtoy/grid.hpp"
#include "obtoy/models.hpp"

namespace obtoy {

enum class DealiasRule {
    pin,         // Pi_N with N = nx/2: the truncation printed in the scheme
    two_thirds,  // classical 2/3 rule for the quadratic products
};

enum class IcKind { trig, gaussian };

struct SolverConfig {
    ModelKind model = ModelKind::linear;
    int nx = 128;
    int ny = 128;
    double dt = 1e-4;
    double t_end = 1.0;
    double a = 0.0;
    DealiasRule dealias = DealiasRule::pin;
    int record_every = 1;
    IcKind ic = IcKind::trig;
    double m = 3.8;
    bool tau_offset = false;
    QFormula q_formula = QFormula::printed;
    std::string out_dir = ".";

    int dealias_kmax() const {
        const int n = std::min(nx, ny);
        return dealias == DealiasRule::pin ? n / 2 : (n - 1) / 3;
    }

    void validate() const {
        auto bad = [](const std::string& key, const std::string& why) {
            throw ConfigError("invalid value for \"" + key + "\": " + why);
        };
        if (!std::isfinite(dt) || dt <= 0.0) bad("dt", "must be a positive finite number");
        if (!std::isfinite(t_end) || t_end <= 0.0) bad("t_end", "must be a positive finite number");
        if (dt > t_end) bad("dt", "must not exceed t_end");
        if (!std::isfinite(a) || a < 0.0 || a > 1.0) bad("a", "must lie in [0, 1]");
        if (record_every < 1) bad("record_every", "must be >= 1");
        if (!std::isfinite(m) || m <= 1.0) bad("m", "must be > 1");
        if (nx % 2 != 0 || nx < 8 || nx > 4096) bad("nx", "must be even and in [8, 4096]");
        if (ny % 2 != 0 || ny < 8 || ny > 4096) bad("ny", "must be even and in [8, 4096]");
        if (ic == IcKind::gaussian && (nx < 64 || ny < 64))
            bad("nx", "gaussian initial data needs nx, ny >= 64");
    }
};

}  // namespace obtoy
