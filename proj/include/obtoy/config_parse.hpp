#pragma once

// Flat key-value configuration with optional [sweep], [convergence] and
// [heat-gap] sections. Unknown keys are rejected; parse errors carry line
// numbers, validation errors name the key.

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "obtoy/format.hpp"
#include "obtoy/solver_config.hpp"

namespace obtoy {

struct SweepSection {
    std::vector<double> a_values{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
    double dt_ref = 1e-6;
    std::optional<double> compare_time;  // defaults to t_end
};

struct ConvergenceSection {
    std::vector<double> dt_ladder;
};

enum class HeatGapMode { torus, continuum };

struct HeatGapSection {
    std::vector<double> a_values{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
    HeatGapMode mode = HeatGapMode::continuum;
    int quadrature_n = 512;
};

struct ParsedConfig {
    SolverConfig base;
    std::optional<SweepSection> sweep;
    std::optional<ConvergenceSection> convergence;
    std::optional<HeatGapSection> heat_gap;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& v, int line, const std::string& key) {
    double out{};
    const char* first = v.data();
    const char* last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("line " + std::to_string(line) + ": key \"" + key +
                          "\": not a number: \"" + v + "\"");
    return out;
}

inline int parse_int(const std::string& v, int line, const std::string& key) {
    int out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("line " + std::to_string(line) + ": key \"" + key +
                          "\": not an integer: \"" + v + "\"");
    return out;
}

inline bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("line " + std::to_string(line) + ": key \"" + key +
                      "\": expected true or false, got \"" + v + "\"");
}

inline std::vector<double> parse_list(const std::string& v, int line, const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) out.push_back(parse_double(trim(item), line, key));
    if (out.empty())
        throw ConfigError("line " + std::to_string(line) + ": key \"" + key + "\": empty list");
    return out;
}

}  // namespace detail

inline ParsedConfig parse_config(const std::string& text) {
    ParsedConfig pc;
    std::string section;  // "" = flat keys
    std::set<std::string> seen;
    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::string s = raw;
        if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
        s = detail::trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("line " + std::to_string(line) + ": unterminated section header");
            section = detail::trim(s.substr(1, s.size() - 2));
            if (section == "sweep")
                pc.sweep.emplace();
            else if (section == "convergence")
                pc.convergence.emplace();
            else if (section == "heat-gap")
                pc.heat_gap.emplace();
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown section \"" +
                                  section + "\"");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string val = detail::trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        if (!seen.insert(section + "/" + key).second)
            throw ConfigError("line " + std::to_string(line) + ": duplicate key \"" + key + "\"");

        SolverConfig& b = pc.base;
        if (section.empty()) {
            if (key == "model") {
                if (val == "linear")
                    b.model = ModelKind::linear;
                else if (val == "nonlinear")
                    b.model = ModelKind::nonlinear;
                else
                    throw ConfigError("line " + std::to_string(line) +
                                      ": key \"model\": expected linear or nonlinear");
            } else if (key == "nx") {
                b.nx = detail::parse_int(val, line, key);
            } else if (key == "ny") {
                b.ny = detail::parse_int(val, line, key);
            } else if (key == "dt") {
                b.dt = detail::parse_double(val, line, key);
            } else if (key == "t_end") {
                b.t_end = detail::parse_double(val, line, key);
            } else if (key == "a") {
                b.a = detail::parse_double(val, line, key);
            } else if (key == "ic") {
                if (val == "trig")
                    b.ic = IcKind::trig;
                else if (val == "gaussian")
                    b.ic = IcKind::gaussian;
                else
                    throw ConfigError("line " + std::to_string(line) +
                                      ": key \"ic\": expected trig or gaussian");
            } else if (key == "m") {
                b.m = detail::parse_double(val, line, key);
            } else if (key == "tau_offset") {
                b.tau_offset = detail::parse_bool(val, line, key);
            } else if (key == "dealias") {
                if (val == "pin")
                    b.dealias = DealiasRule::pin;
                else if (val == "two_thirds")
                    b.dealias = DealiasRule::two_thirds;
                else
                    throw ConfigError("line " + std::to_string(line) +
                                      ": key \"dealias\": expected pin or two_thirds");
            } else if (key == "record_every") {
                b.record_every = detail::parse_int(val, line, key);
            } else if (key == "q_formula") {
                if (val == "printed")
                    b.q_formula = QFormula::printed;
                else if (val == "algebraic")
                    b.q_formula = QFormula::algebraic;
                else
                    throw ConfigError("line " + std::to_string(line) +
                                      ": key \"q_formula\": expected printed or algebraic");
            } else if (key == "out_dir") {
                b.out_dir = val;
            } else {
                throw ConfigError("line " + std::to_string(line) + ": unknown key \"" + key +
                                  "\"");
            }
        } else if (section == "sweep") {
            SweepSection& sw = *pc.sweep;
            if (key == "a_values")
                sw.a_values = detail::parse_list(val, line, key);
            else if (key == "dt_ref")
                sw.dt_ref = detail::parse_double(val, line, key);
            else if (key == "compare_time")
                sw.compare_time = detail::parse_double(val, line, key);
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown key \"" + key +
                                  "\" in [sweep]");
        } else if (section == "convergence") {
            if (key == "dt_ladder")
                pc.convergence->dt_ladder = detail::parse_list(val, line, key);
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown key \"" + key +
                                  "\" in [convergence]");
        } else {  // heat-gap
            HeatGapSection& hg = *pc.heat_gap;
            if (key == "a_values") {
                hg.a_values = detail::parse_list(val, line, key);
            } else if (key == "mode") {
                if (val == "torus")
                    hg.mode = HeatGapMode::torus;
                else if (val == "continuum")
                    hg.mode = HeatGapMode::continuum;
                else
                    throw ConfigError("line " + std::to_string(line) +
                                      ": key \"mode\": expected torus or continuum");
            } else if (key == "quadrature_n") {
                hg.quadrature_n = detail::parse_int(val, line, key);
            } else {
                throw ConfigError("line " + std::to_string(line) + ": unknown key \"" + key +
                                  "\" in [heat-gap]");
            }
        }
    }
    pc.base.validate();
    if (pc.sweep) {
        const SweepSection& sw = *pc.sweep;
        if (!(sw.dt_ref > 0.0) || sw.dt_ref > pc.base.dt)
            throw ConfigError("invalid value for \"dt_ref\": must be in (0, dt]");
        if (sw.a_values.empty())
            throw ConfigError("invalid value for \"a_values\": must be nonempty");
        for (std::size_t i = 0; i < sw.a_values.size(); ++i) {
            if (!(sw.a_values[i] > 0.0))
                throw ConfigError("invalid value for \"a_values\": entries must be positive");
            if (i > 0 && !(sw.a_values[i] < sw.a_values[i - 1]))
                throw ConfigError(
                    "invalid value for \"a_values\": entries must be strictly decreasing");
        }
        if (sw.compare_time && !(*sw.compare_time > 0.0))
            throw ConfigError("invalid value for \"compare_time\": must be positive");
    }
    if (pc.convergence) {
        const auto& ld = pc.convergence->dt_ladder;
        if (ld.size() < 3)
            throw ConfigError("invalid value for \"dt_ladder\": need at least 3 rungs");
        for (std::size_t i = 0; i < ld.size(); ++i) {
            if (!(ld[i] > 0.0))
                throw ConfigError("invalid value for \"dt_ladder\": entries must be positive");
            if (i > 0 && !(ld[i] < ld[i - 1]))
                throw ConfigError(
                    "invalid value for \"dt_ladder\": entries must be strictly decreasing");
        }
    }
    if (pc.heat_gap) {
        for (double a : pc.heat_gap->a_values)
            if (!(a > 0.0) || a > 1.0)
                throw ConfigError("invalid value for \"a_values\": entries must be in (0, 1]");
        if (pc.heat_gap->quadrature_n < 2)
            throw ConfigError("invalid value for \"quadrature_n\": must be >= 2");
    }
    return pc;
}

// Canonical text form; parse_config(write_config(pc)) reproduces pc and
// re-serializes to the identical text.
inline std::string write_config(const ParsedConfig& pc) {
    const SolverConfig& b = pc.base;
    std::ostringstream os;
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += fmt_double(v[i]);
        }
        return s;
    };
    os << "model = " << (b.model == ModelKind::linear ? "linear" : "nonlinear") << "\n";
    os << "nx = " << b.nx << "\n";
    os << "ny = " << b.ny << "\n";
    os << "dt = " << fmt_double(b.dt) << "\n";
    os << "t_end = " << fmt_double(b.t_end) << "\n";
    os << "a = " << fmt_double(b.a) << "\n";
    os << "ic = " << (b.ic == IcKind::trig ? "trig" : "gaussian") << "\n";
    os << "m = " << fmt_double(b.m) << "\n";
    os << "tau_offset = " << (b.tau_offset ? "true" : "false") << "\n";
    os << "dealias = " << (b.dealias == DealiasRule::pin ? "pin" : "two_thirds") << "\n";
    os << "record_every = " << b.record_every << "\n";
    os << "q_formula = " << (b.q_formula == QFormula::printed ? "printed" : "algebraic") << "\n";
    os << "out_dir = " << b.out_dir << "\n";
    if (pc.sweep) {
        os << "[sweep]\n";
        os << "a_values = " << list(pc.sweep->a_values) << "\n";
        os << "dt_ref = " << fmt_double(pc.sweep->dt_ref) << "\n";
        if (pc.sweep->compare_time)
            os << "compare_time = " << fmt_double(*pc.sweep->compare_time) << "\n";
    }
    if (pc.convergence) {
        os << "[convergence]\n";
        os << "dt_ladder = " << list(pc.convergence->dt_ladder) << "\n";
    }
    if (pc.heat_gap) {
        os << "[heat-gap]\n";
        os << "a_values = " << list(pc.heat_gap->a_values) << "\n";
        os << "mode = " << (pc.heat_gap->mode == HeatGapMode::torus ? "torus" : "continuum")
           << "\n";
        os << "quadrature_n = " << pc.heat_gap->quadrature_n << "\n";
    }
    return os.str();
}

}  // namespace obtoy
