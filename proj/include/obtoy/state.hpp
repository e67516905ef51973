#pragma once

// Solution state of the toy models: a divergence-free velocity pair and
// the two stored components (tau11, tau12) of the trace-free symmetric
// stress.

#include "obtoy/field.hpp"

namespace obtoy {

enum class ModelKind { linear, nonlinear };

struct VelocityField {
    SpectralField u1, u2;

    VelocityField() = default;
    explicit VelocityField(GridPtr g) : u1(g), u2(std::move(g)) {}
};

struct StressField {
    SpectralField t1, t2;

    StressField() = default;
    explicit StressField(GridPtr g) : t1(g), t2(std::move(g)) {}
};

struct State {
    VelocityField u;
    StressField tau;
    double t = 0.0;

    State() = default;
    explicit State(GridPtr g) : u(g), tau(std::move(g)) {}

    const GridPtr& grid() const { return u.u1.grid; }
};

}  // namespace obtoy
