#include "hasim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace hasim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("value '" + value + "' for key '" + key +
                          "' is not a number");
    }
}

long parse_int(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("value '" + value + "' for key '" + key +
                          "' is not an integer");
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    std::string v = lower(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("value '" + value + "' for key '" + key +
                      "' is not a boolean (use true/false)");
}

void require(bool ok, const std::string& invariant) {
    if (!ok) throw ConfigError("invariant violated: " + invariant);
}

const char* kModelKeys = "eta, rho, reservation_utility, disutility, environment_mean";
const char* kGridKeys = "memory, sigma_mult, delta, q";
const char* kRunKeys =
    "periods, replications, master_seed, workers, alpha, output_dir, scenarios";
const char* kModesKeys =
    "threshold_mode, degenerate, status_quo_competes, accept_on_offer_only, "
    "idle_observes_output, universe, normalizer, manhattan_literal";

void apply_model(Settings& s, const std::string& key, const std::string& value) {
    if (key == "eta") {
        double v = parse_double(value, key);
        require(v > 0.0, "eta must be positive (risk aversion)");
        s.base.agent.eta = v;
    } else if (key == "rho") {
        double v = parse_double(value, key);
        require(v > 0.0, "rho must be positive (effort productivity)");
        s.base.agent.rho = v;
    } else if (key == "reservation_utility") {
        s.base.agent.reservation_utility = parse_double(value, key);
    } else if (key == "disutility") {
        double v = parse_double(value, key);
        require(v > 0.0, "disutility must be positive");
        s.base.agent.disutility = v;
    } else if (key == "environment_mean") {
        s.base.environment_mean = parse_double(value, key);
    } else {
        throw ConfigError("unknown key '" + key + "' in [model]; valid keys: " +
                          kModelKeys);
    }
}

void apply_grid(Settings& s, const std::string& key, const std::string& value) {
    std::vector<std::string> items = split_list(value);
    require(!items.empty(), "grid axis '" + key + "' must list at least one value");
    if (key == "memory") {
        std::vector<std::size_t> depths;
        for (const std::string& item : items) {
            if (lower(item) == "inf" || item == "0") {
                depths.push_back(0);
            } else {
                long v = parse_int(item, key);
                require(v >= 1, "memory depth must be >= 1 or 'inf'");
                depths.push_back(static_cast<std::size_t>(v));
            }
        }
        s.axes.memory_depths = depths;
    } else if (key == "sigma_mult") {
        std::vector<double> vals;
        for (const std::string& item : items) {
            double v = parse_double(item, key);
            require(v >= 0.0, "sigma multiplier must be >= 0");
            vals.push_back(v);
        }
        s.axes.sigma_multipliers = vals;
    } else if (key == "delta") {
        std::vector<double> vals;
        for (const std::string& item : items) {
            double v = parse_double(item, key);
            require(v >= 0.0 && v <= 1.0, "delta must lie in [0,1]");
            vals.push_back(v);
        }
        s.axes.exploration_propensities = vals;
    } else if (key == "q") {
        std::vector<int> vals;
        for (const std::string& item : items) {
            long v = parse_int(item, key);
            require(v >= 1, "q must be >= 1");
            vals.push_back(static_cast<int>(v));
        }
        s.axes.window_divisors = vals;
    } else {
        throw ConfigError("unknown key '" + key + "' in [grid]; valid keys: " +
                          kGridKeys);
    }
}

void apply_run(Settings& s, const std::string& key, const std::string& value) {
    if (key == "periods") {
        long v = parse_int(value, key);
        require(v >= 1, "periods must be >= 1");
        s.base.periods = static_cast<int>(v);
    } else if (key == "replications") {
        long v = parse_int(value, key);
        require(v >= 1, "replications must be >= 1");
        s.base.replications = static_cast<int>(v);
    } else if (key == "master_seed") {
        s.base.master_seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "workers") {
        long v = parse_int(value, key);
        require(v >= 1, "workers must be >= 1");
        s.run.workers = static_cast<int>(v);
    } else if (key == "alpha") {
        double v = parse_double(value, key);
        require(v > 0.0 && v < 1.0, "alpha must lie in (0,1)");
        s.run.alpha = v;
    } else if (key == "output_dir") {
        require(!trim(value).empty(), "output_dir must not be empty");
        s.run.output_dir = trim(value);
    } else if (key == "scenarios") {
        s.run.scenario_ids = split_list(value);
    } else {
        throw ConfigError("unknown key '" + key + "' in [run]; valid keys: " +
                          kRunKeys);
    }
}

void apply_modes(Settings& s, const std::string& key, const std::string& value) {
    std::string v = lower(trim(value));
    if (key == "threshold_mode") {
        if (v == "calibrated")
            s.base.toggles.threshold_mode = ThresholdMode::kCalibrated;
        else if (v == "literal")
            s.base.toggles.threshold_mode = ThresholdMode::kLiteral;
        else
            throw ConfigError("threshold_mode must be 'calibrated' or 'literal'");
    } else if (key == "degenerate") {
        if (v == "exploit")
            s.base.toggles.degenerate = DegeneratePolicy::kExploit;
        else if (v == "bernoulli")
            s.base.toggles.degenerate = DegeneratePolicy::kBernoulli;
        else
            throw ConfigError("degenerate must be 'exploit' or 'bernoulli'");
    } else if (key == "status_quo_competes") {
        s.base.toggles.status_quo_competes = parse_bool(value, key);
    } else if (key == "accept_on_offer_only") {
        s.base.toggles.accept_on_offer_only = parse_bool(value, key);
    } else if (key == "idle_observes_output") {
        s.base.toggles.idle_observes_output = parse_bool(value, key);
    } else if (key == "universe") {
        if (v == "inducible")
            s.base.toggles.universe = SearchUniverse::kInducible;
        else if (v == "previous_premium")
            s.base.toggles.universe = SearchUniverse::kPreviousPremium;
        else
            throw ConfigError("universe must be 'inducible' or 'previous_premium'");
    } else if (key == "normalizer") {
        if (v == "sigma_zero")
            s.base.toggles.normalizer = Normalizer::kSigmaZero;
        else if (v == "per_sigma")
            s.base.toggles.normalizer = Normalizer::kPerSigma;
        else
            throw ConfigError("normalizer must be 'sigma_zero' or 'per_sigma'");
    } else if (key == "manhattan_literal") {
        s.run.manhattan_literal = parse_bool(value, key);
    } else {
        throw ConfigError("unknown key '" + key + "' in [modes]; valid keys: " +
                          kModesKeys);
    }
}

}  // namespace

Settings default_settings() {
    Settings s;
    s.base.id = "base";
    return s;
}

void apply_setting(Settings& settings, const std::string& section,
                   const std::string& key, const std::string& value) {
    std::string sec = lower(trim(section));
    std::string k = lower(trim(key));
    if (sec == "model")
        apply_model(settings, k, value);
    else if (sec == "grid")
        apply_grid(settings, k, value);
    else if (sec == "run")
        apply_run(settings, k, value);
    else if (sec == "modes")
        apply_modes(settings, k, value);
    else
        throw ConfigError("unknown section [" + section +
                          "]; valid sections: model, grid, run, modes");
}

Settings parse_config_text(const std::string& text) {
    Settings settings = default_settings();
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": empty section name");
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        if (section.empty())
            throw ConfigError("line " + std::to_string(line_no) +
                              ": key outside any section");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        try {
            apply_setting(settings, section, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return settings;
}

Settings parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace hasim
