#pragma once

#include <stdexcept>
#include <string>

namespace obtoy {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a run leaves the finite range (see stepper.hpp).
struct BlowupError : std::runtime_error {
    BlowupError(const std::string& what, long step_index)
        : std::runtime_error(what), step(step_index) {}
    long step;
};

}  // namespace obtoy
