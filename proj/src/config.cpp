#include "gbbm/config.hpp"

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gbbm/errors.hpp"

namespace gbbm {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            const std::string full = where.empty() ? key : where + "." + key;
            throw ConfigError(full, "unknown config key '" + full + "'");
        }
    }
}

const json& section(const json& root, const std::string& name) {
    if (!root.contains(name)) throw ConfigError(name, "missing config section '" + name + "'");
    const json& s = root.at(name);
    if (!s.is_object()) throw ConfigError(name, "config section '" + name + "' must be an object");
    return s;
}

double number(const json& obj, const std::string& where, const std::string& key, double fallback,
              bool required = false) {
    const std::string full = where.empty() ? key : where + "." + key;
    if (!obj.contains(key)) {
        if (required) throw ConfigError(full, "missing config key '" + full + "'");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(full, "config key '" + full + "' must be a number");
    return v.get<double>();
}

double coefficient(const json& obj, const std::string& where, const std::string& key, double fallback) {
    const std::string full = where + "." + key;
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return parse_coefficient(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(full, "config key '" + full + "': " + e.what());
        }
    }
    throw ConfigError(full, "config key '" + full + "' must be a number or a fraction string");
}

long long integer(const json& obj, const std::string& where, const std::string& key, long long fallback,
                  bool required = false) {
    const std::string full = where.empty() ? key : where + "." + key;
    if (!obj.contains(key)) {
        if (required) throw ConfigError(full, "missing config key '" + full + "'");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(full, "config key '" + full + "' must be an integer");
    return v.get<long long>();
}

std::string text(const json& obj, const std::string& where, const std::string& key,
                 const std::string& fallback) {
    const std::string full = where.empty() ? key : where + "." + key;
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(full, "config key '" + full + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

double parse_length(const std::string& raw) {
    std::string s;
    for (char c : raw) {
        if (c != ' ' && c != '*') s += c;
    }
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return parse_coefficient(s);
    if (pos + 2 != s.size()) throw std::invalid_argument("bad length '" + raw + "'");
    const std::string head = s.substr(0, pos);
    return (head.empty() ? 1.0 : parse_coefficient(head)) * std::numbers::pi;
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "config must be a JSON object");
    reject_unknown(root, "",
                   {"params", "grid", "data", "stepper", "t_end", "observer_interval", "sigma_grid",
                    "output_dir", "continuation_c", "existence_constant", "tail_fraction",
                    "min_tail_samples", "blowup_factor", "radius"});

    RunConfig cfg;

    const json& params = section(root, "params");
    reject_unknown(params, "params", {"gamma1", "gamma2", "delta1", "delta2", "gamma", "gamma_x"});
    Parameters& p = cfg.params;
    p.gamma1 = coefficient(params, "params", "gamma1", p.gamma1);
    p.gamma2 = coefficient(params, "params", "gamma2", p.gamma2);
    p.delta1 = coefficient(params, "params", "delta1", p.delta1);
    p.delta2 = coefficient(params, "params", "delta2", p.delta2);
    p.gamma = coefficient(params, "params", "gamma", p.gamma);
    p.gamma_x = coefficient(params, "params", "gamma_x", p.gamma);

    const json& grid = section(root, "grid");
    reject_unknown(grid, "grid", {"n_modes", "length"});
    cfg.n_modes = static_cast<int>(integer(grid, "grid", "n_modes", 0, true));
    if (!grid.contains("length")) throw ConfigError("grid.length", "missing config key 'grid.length'");
    if (grid.at("length").is_string()) {
        try {
            cfg.length = parse_length(grid.at("length").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("grid.length", std::string("config key 'grid.length': ") + e.what());
        }
    } else {
        cfg.length = number(grid, "grid", "length", 0.0, true);
    }

    const json& data = section(root, "data");
    reject_unknown(data, "data", {"kind", "amplitude", "sigma0", "seed", "width", "modes"});
    try {
        cfg.data.kind = data_kind_from_string(text(data, "data", "kind", "poisson_kernel"));
    } catch (const ContractError& e) {
        throw ConfigError("data.kind", e.what());
    }
    cfg.data.amplitude = number(data, "data", "amplitude", cfg.data.amplitude);
    cfg.data.sigma0 = number(data, "data", "sigma0", cfg.data.sigma0);
    cfg.data.seed = static_cast<std::uint64_t>(integer(data, "data", "seed", 1));
    cfg.data.width = number(data, "data", "width", cfg.data.width);
    cfg.data.modes = static_cast<int>(integer(data, "data", "modes", cfg.data.modes));

    if (root.contains("stepper")) {
        const json& st = section(root, "stepper");
        reject_unknown(st, "stepper", {"dt", "scheme", "picard_tol", "picard_max_iter", "nonlinear"});
        cfg.stepper.dt = number(st, "stepper", "dt", cfg.stepper.dt);
        try {
            cfg.stepper.scheme = scheme_from_string(text(st, "stepper", "scheme", "ExponentialRK4"));
        } catch (const ContractError& e) {
            throw ConfigError("stepper.scheme", e.what());
        }
        cfg.stepper.picard_tol = number(st, "stepper", "picard_tol", cfg.stepper.picard_tol);
        cfg.stepper.picard_max_iter =
            static_cast<int>(integer(st, "stepper", "picard_max_iter", cfg.stepper.picard_max_iter));
        if (st.contains("nonlinear")) {
            if (!st.at("nonlinear").is_boolean()) {
                throw ConfigError("stepper.nonlinear", "config key 'stepper.nonlinear' must be a boolean");
            }
            cfg.stepper.nonlinear = st.at("nonlinear").get<bool>();
        }
    }

    cfg.t_end = number(root, "", "t_end", cfg.t_end, true);
    cfg.observer_interval = number(root, "", "observer_interval", cfg.observer_interval);
    if (root.contains("sigma_grid")) {
        const json& sg = root.at("sigma_grid");
        if (!sg.is_array()) throw ConfigError("sigma_grid", "config key 'sigma_grid' must be a list");
        cfg.sigma_grid.clear();
        for (const auto& v : sg) {
            if (!v.is_number()) throw ConfigError("sigma_grid", "sigma_grid entries must be numbers");
            cfg.sigma_grid.push_back(v.get<double>());
        }
    }
    cfg.output_dir = text(root, "", "output_dir", cfg.output_dir);
    cfg.continuation_c = number(root, "", "continuation_c", cfg.continuation_c);
    cfg.existence_constant = number(root, "", "existence_constant", cfg.existence_constant);
    cfg.tail_fraction = number(root, "", "tail_fraction", cfg.tail_fraction);
    cfg.min_tail_samples = static_cast<int>(integer(root, "", "min_tail_samples", cfg.min_tail_samples));
    cfg.blowup_factor = number(root, "", "blowup_factor", cfg.blowup_factor);
    if (root.contains("radius")) {
        const json& r = section(root, "radius");
        reject_unknown(r, "radius", {"floor", "window_start", "guard_modes"});
        cfg.radius.floor = number(r, "radius", "floor", cfg.radius.floor);
        cfg.radius.window_start = number(r, "radius", "window_start", cfg.radius.window_start);
        cfg.radius.guard_modes = static_cast<int>(integer(r, "radius", "guard_modes", cfg.radius.guard_modes));
    }

    if (const char* env = std::getenv("GBBM_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        cfg.output_dir = env;
    }

    try {
        cfg.validate();
    } catch (const ContractError& e) {
        throw ConfigError("", std::string("invalid config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("", "cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

}  // namespace gbbm
