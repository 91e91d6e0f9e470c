#pragma once

// INI-style configuration: sections [model], [grid], [run], [modes].
// Unknown keys and malformed lines are hard errors (with the valid-key list
// and the line number respectively); out-of-range values name the violated
// invariant. Defaults reproduce the experiments' parameterization.

#include <stdexcept>
#include <string>
#include <vector>

#include "hasim/engine.hpp"

namespace hasim {

struct RunSettings {
    std::string output_dir = ".";
    int workers = 1;
    double alpha = 0.01;
    bool manhattan_literal = false;
    std::vector<std::string> scenario_ids;  // empty = whole grid
};

struct Settings {
    ScenarioConfig base;  // axis fields on it are placeholders; axes below rule
    GridAxes axes;
    RunSettings run;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

Settings default_settings();

// Parses config text into settings layered over the defaults.
Settings parse_config_text(const std::string& text);

// Reads and parses a file; throws ConfigError when unreadable.
Settings parse_config_file(const std::string& path);

// Applies one "section.key" override (the flag layer on top of the file
// layer). Same validation as the file parser.
void apply_setting(Settings& settings, const std::string& section,
                   const std::string& key, const std::string& value);

}  // namespace hasim
