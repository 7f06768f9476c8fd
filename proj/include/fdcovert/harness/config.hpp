#ifndef FDCOVERT_HARNESS_CONFIG_HPP
#define FDCOVERT_HARNESS_CONFIG_HPP

// Flat "key = value" scenario files. Power keys accept a `_db` suffix;
// '#' starts a comment. Absent keys keep their defaults.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fdcovert/core_model.hpp"
#include "fdcovert/covertness.hpp"

namespace fdcovert::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    ChannelStats stats;
    SystemParams params;
    std::optional<double> epsilon;
    std::uint64_t seed = 0;
    std::size_t trials = 100000;  // 0 disables Monte-Carlo columns
    XiModel xi_model = XiModel::published;
    unsigned threads = 0;  // 0 = hardware concurrency; never affects results
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::string where(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line);
}

inline double parse_double(std::string_view key, std::string_view text, const std::string& loc) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ConfigError(loc + ": malformed number for '" + std::string(key) + "': '" + std::string(text) + "'");
    return v;
}

inline std::uint64_t parse_uint(std::string_view key, std::string_view text, const std::string& loc) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(loc + ": malformed integer for '" + std::string(key) + "': '" + std::string(text) + "'");
    return v;
}

inline void check_range(bool ok, std::string_view key, const std::string& loc, const char* rule) {
    if (!ok) throw ConfigError(loc + ": value out of range for '" + std::string(key) + "' (" + rule + ")");
}

}  // namespace detail

/// Applies a single key/value pair; `loc` names its origin in error messages.
inline void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value, const std::string& loc) {
    using detail::check_range;
    key = detail::trim(key);
    value = detail::trim(value);
    if (key.empty()) throw ConfigError(loc + ": missing key");

    if (key == "seed") {
        cfg.seed = detail::parse_uint(key, value, loc);
        return;
    }
    if (key == "trials") {
        const auto n = detail::parse_uint(key, value, loc);
        check_range(n == 0 || n >= 1000, key, loc, "0 or >= 1000");
        cfg.trials = static_cast<std::size_t>(n);
        return;
    }
    if (key == "xi_model") {
        if (value == "published") cfg.xi_model = XiModel::published;
        else if (value == "exact") cfg.xi_model = XiModel::exact;
        else throw ConfigError(loc + ": xi_model must be 'published' or 'exact'");
        return;
    }

    struct PowerKey {
        std::string_view name;
        double SystemParams::*field;
        bool allow_zero;
    };
    static constexpr PowerKey powers[] = {
        {"p_a", &SystemParams::p_a, false},
        {"p_b_max", &SystemParams::p_b_max, true},
        {"sigma2_b", &SystemParams::sigma2_b, false},
        {"sigma2_w", &SystemParams::sigma2_w, false},
    };
    for (const auto& pk : powers) {
        const bool db = key.size() == pk.name.size() + 3 && key.substr(0, pk.name.size()) == pk.name &&
                        key.substr(pk.name.size()) == "_db";
        if (key != pk.name && !db) continue;
        double v = detail::parse_double(key, value, loc);
        if (db) v = db_to_linear(v);
        if (pk.allow_zero) check_range(v >= 0.0, key, loc, ">= 0");
        else check_range(v > 0.0, key, loc, "> 0");
        cfg.params.*pk.field = v;
        return;
    }

    struct LinearKey {
        std::string_view name;
        double* field;
    };
    const LinearKey gains[] = {
        {"lambda_ab", &cfg.stats.lambda_ab},
        {"lambda_bb", &cfg.stats.lambda_bb},
        {"lambda_aw", &cfg.stats.lambda_aw},
        {"lambda_bw", &cfg.stats.lambda_bw},
    };
    for (const auto& g : gains) {
        if (key != g.name) continue;
        const double v = detail::parse_double(key, value, loc);
        check_range(v > 0.0, key, loc, "> 0");
        *g.field = v;
        return;
    }

    if (key == "phi") {
        const double v = detail::parse_double(key, value, loc);
        check_range(v >= 0.0 && v <= 1.0, key, loc, "0 <= phi <= 1");
        cfg.params.phi = v;
    } else if (key == "rate") {
        const double v = detail::parse_double(key, value, loc);
        check_range(v > 0.0, key, loc, "> 0");
        cfg.params.rate = v;
    } else if (key == "epsilon") {
        const double v = detail::parse_double(key, value, loc);
        check_range(v >= 0.0 && v <= 1.0, key, loc, "0 <= epsilon <= 1");
        cfg.epsilon = v;
    } else {
        throw ConfigError(loc + ": unknown key '" + std::string(key) + "'");
    }
}

/// Parses "key=value" (as given to --set).
inline void apply_override(ScenarioConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("--set " + std::string(assignment) + ": expected key=value");
    apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1), "--set " + std::string(assignment));
}

inline ScenarioConfig parse_config_text(std::string_view text, ScenarioConfig base = {},
                                        std::string_view source = "<config>") {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string loc = detail::where(source, line_no);
        if (eq == std::string_view::npos) throw ConfigError(loc + ": expected 'key = value'");
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1), loc);
    }
    return base;
}

inline ScenarioConfig parse_config(const std::string& path, ScenarioConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::move(base), path);
}

}  // namespace fdcovert::harness

#endif
