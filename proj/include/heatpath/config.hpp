#pragma once

// Experiment configuration: a flat key=value document, one pair per line,
// '#' comments. Unknown keys are rejected with line diagnostics; command
// line flags may override individual fields afterwards.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heatpath/geom.hpp"

namespace heatpath {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
    std::string experiment;
    std::string manifold = "sphere";  // euclidean | torus | sphere | interval
    int dim = 1;
    std::vector<double> sides = {1.0};
    double radius = 1.0;
    double length = M_PI;
    std::string boundary = "dirichlet";
    double t = 0.5;
    std::vector<int> n_list = {2, 4, 8, 16, 32};
    int resolution = 0;  // 0: each experiment picks its own default
    std::uint64_t seed = 0;
    long n_samples = 100000;
    std::string weight = "none";  // none | cos | magnetic | harmonic
    double tolerance_scale = 1.0;
    std::string out_dir = ".";

    ManifoldSpec manifold_spec() const {
        if (manifold == "euclidean") return ManifoldSpec::euclidean(dim);
        if (manifold == "torus") return ManifoldSpec::flat_torus(sides);
        if (manifold == "sphere") return ManifoldSpec::sphere(radius);
        if (manifold == "interval")
            return ManifoldSpec::interval(length, boundary == "neumann"
                                                      ? BoundaryCondition::Neumann
                                                      : BoundaryCondition::Dirichlet);
        throw ConfigError("unknown manifold '" + manifold + "'");
    }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

inline std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<config>") {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) fail("expected key=value, got '" + s + "'");
        std::string key = detail::trim(s.substr(0, eq));
        std::string val = detail::trim(s.substr(eq + 1));
        try {
            if (key == "experiment") cfg.experiment = val;
            else if (key == "manifold") cfg.manifold = val;
            else if (key == "dim") cfg.dim = std::stoi(val);
            else if (key == "sides") {
                cfg.sides.clear();
                for (const auto& p : detail::split(val, ' '))
                    if (!p.empty()) cfg.sides.push_back(std::stod(p));
                if (cfg.sides.empty()) fail("sides: need at least one length");
            } else if (key == "radius") cfg.radius = std::stod(val);
            else if (key == "length") cfg.length = std::stod(val);
            else if (key == "boundary") {
                if (val != "dirichlet" && val != "neumann") fail("boundary: dirichlet|neumann");
                cfg.boundary = val;
            } else if (key == "t") cfg.t = std::stod(val);
            else if (key == "n_list") {
                cfg.n_list.clear();
                for (const auto& p : detail::split(val, ' '))
                    if (!p.empty()) cfg.n_list.push_back(std::stoi(p));
                if (cfg.n_list.empty()) fail("n_list: need at least one value");
            } else if (key == "resolution") cfg.resolution = std::stoi(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "n_samples") cfg.n_samples = std::stol(val);
            else if (key == "weight") cfg.weight = val;
            else if (key == "tolerance_scale") cfg.tolerance_scale = std::stod(val);
            else if (key == "out") cfg.out_dir = val;
            else fail("unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail("cannot parse value '" + val + "' for key '" + key + "'");
        }
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_config(in, path);
}

}  // namespace heatpath
