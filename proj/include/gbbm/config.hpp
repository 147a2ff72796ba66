#pragma once

#include <stdexcept>
#include <string>

#include "gbbm/tracker.hpp"

namespace gbbm {

/// Malformed or unknown configuration entry; `key` names the offending field.
struct ConfigError : std::runtime_error {
    ConfigError(std::string key_, const std::string& what)
        : std::runtime_error(what), key(std::move(key_)) {}
    std::string key;
};

/// Parses a run configuration from JSON text. Sections "params", "grid", "data",
/// "stepper" and "radius" are objects; everything else is a top-level scalar or list.
/// Coefficients and the grid length accept strings ("7/48", "64pi").
/// Environment variable GBBM_OUTPUT_DIR, when set, overrides output_dir.
[[nodiscard]] RunConfig parse_config(const std::string& json_text);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// "64pi", "64*pi", "pi" or a plain decimal.
[[nodiscard]] double parse_length(const std::string& text);

}  // namespace gbbm
