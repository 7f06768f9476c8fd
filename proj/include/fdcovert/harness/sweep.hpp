#ifndef FDCOVERT_HARNESS_SWEEP_HPP
#define FDCOVERT_HARNESS_SWEEP_HPP

// One-dimensional parameter sweeps and the figure presets built on them.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdcovert/core_model.hpp"
#include "fdcovert/covertness.hpp"
#include "fdcovert/harness/config.hpp"
#include "fdcovert/harness/table.hpp"
#include "fdcovert/link.hpp"

namespace fdcovert::harness {

enum class SweepVariable { p_b_max, p_a, epsilon, rate, sigma2_b, phi };
enum class Output { delta, expected_xi, r_c_star, p_b_max_star, t_eps };
enum class Scale { linear, db };

struct SweepSpec {
    SweepVariable variable = SweepVariable::p_b_max;
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 2;
    Scale scale = Scale::linear;
    std::vector<Output> outputs;
};

inline std::string to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::p_b_max: return "p_b_max";
        case SweepVariable::p_a: return "p_a";
        case SweepVariable::epsilon: return "epsilon";
        case SweepVariable::rate: return "rate";
        case SweepVariable::sigma2_b: return "sigma2_b";
        case SweepVariable::phi: return "phi";
    }
    return {};
}

inline std::string to_string(Output o) {
    switch (o) {
        case Output::delta: return "delta";
        case Output::expected_xi: return "expected_xi";
        case Output::r_c_star: return "r_c_star";
        case Output::p_b_max_star: return "p_b_max_star";
        case Output::t_eps: return "t_eps";
    }
    return {};
}

inline SweepVariable parse_variable(std::string_view s) {
    for (auto v : {SweepVariable::p_b_max, SweepVariable::p_a, SweepVariable::epsilon, SweepVariable::rate,
                   SweepVariable::sigma2_b, SweepVariable::phi})
        if (s == to_string(v)) return v;
    if (s == "R") return SweepVariable::rate;
    throw ConfigError("unknown sweep variable '" + std::string(s) + "'");
}

inline Output parse_output(std::string_view s) {
    for (auto o : {Output::delta, Output::expected_xi, Output::r_c_star, Output::p_b_max_star, Output::t_eps})
        if (s == to_string(o)) return o;
    throw ConfigError("unknown sweep output '" + std::string(s) + "'");
}

inline bool is_power(SweepVariable v) {
    return v == SweepVariable::p_b_max || v == SweepVariable::p_a || v == SweepVariable::sigma2_b;
}

inline bool needs_epsilon(Output o) {
    return o == Output::r_c_star || o == Output::p_b_max_star || o == Output::t_eps;
}

inline void validate(const SweepSpec& spec, const ScenarioConfig& cfg) {
    if (spec.steps < 2) throw ConfigError("sweep steps must be >= 2");
    if (!(spec.start < spec.stop)) throw ConfigError("sweep start must be < stop");
    if (spec.scale == Scale::db && !is_power(spec.variable))
        throw ConfigError("dB scale applies to power variables only, not " + to_string(spec.variable));
    if (spec.outputs.empty()) throw ConfigError("sweep needs at least one output");
    for (auto o : spec.outputs)
        if (needs_epsilon(o) && spec.variable != SweepVariable::epsilon && !cfg.epsilon)
            throw ConfigError("output " + to_string(o) + " needs epsilon in the config");
}

/// Swept value at point i, in the spec's own scale.
inline double sweep_point(const SweepSpec& spec, std::size_t i) {
    if (i + 1 == spec.steps) return spec.stop;
    return spec.start + (spec.stop - spec.start) * static_cast<double>(i) / static_cast<double>(spec.steps - 1);
}

inline std::vector<std::string> sweep_header(const SweepSpec& spec, const ScenarioConfig& cfg) {
    std::vector<std::string> h{"status", to_string(spec.variable) + (spec.scale == Scale::db ? "_db" : "")};
    for (auto o : spec.outputs) {
        h.push_back(to_string(o));
        const bool mc = cfg.trials > 0 && (o == Output::delta || o == Output::expected_xi || o == Output::r_c_star);
        if (mc) {
            h.push_back(to_string(o) + "_mc");
            h.push_back(to_string(o) + "_mc_stderr");
        }
    }
    return h;
}

namespace detail {

inline void set_variable(ScenarioConfig& cfg, SweepVariable v, double linear) {
    switch (v) {
        case SweepVariable::p_b_max: cfg.params.p_b_max = linear; break;
        case SweepVariable::p_a: cfg.params.p_a = linear; break;
        case SweepVariable::sigma2_b: cfg.params.sigma2_b = linear; break;
        case SweepVariable::rate: cfg.params.rate = linear; break;
        case SweepVariable::phi: cfg.params.phi = linear; break;
        case SweepVariable::epsilon:
            if (!(linear >= 0.0 && linear <= 1.0)) throw ConfigError("swept epsilon must lie in [0, 1]");
            cfg.epsilon = linear;
            break;
    }
    try {
        validate(cfg.params);
    } catch (const ParameterError& e) {
        throw ConfigError("sweep point " + to_string(v) + "=" + format_number(linear) + ": " + e.what());
    }
}

inline void push_estimate(std::vector<std::string>& row, const Estimate& e) {
    row.push_back(format_number(e.value));
    row.push_back(format_number(e.std_error));
}

}  // namespace detail

/// Evaluates one sweep point. `rng` is the point's own stream.
inline std::vector<std::string> sweep_row(const ScenarioConfig& cfg, const SweepSpec& spec, double shown,
                                          const RandomSource& rng) {
    validate(cfg.params);
    validate(cfg.stats);
    std::vector<std::string> row{"ok", format_number(shown)};

    std::optional<CovertDesign> design;
    bool unsatisfiable = false;
    if (cfg.epsilon) {
        try {
            design = design_covert(cfg.params, cfg.stats, *cfg.epsilon, cfg.xi_model);
        } catch (const UnsatisfiableError&) {
            unsatisfiable = true;
        }
    }

    for (std::size_t j = 0; j < spec.outputs.size(); ++j) {
        const Output o = spec.outputs[j];
        const bool mc = cfg.trials > 0;
        const RandomSource sub = rng.substream(j);
        switch (o) {
            case Output::delta: {
                const auto in = make_outage_inputs(cfg.params, cfg.stats);
                row.push_back(format_number(outage_probability(in)));
                if (mc) detail::push_estimate(row, mc_outage(in, cfg.trials, sub, cfg.threads));
                break;
            }
            case Output::expected_xi: {
                row.push_back(format_number(expected_xi_star(t_of_powers(cfg.params, cfg.stats), cfg.xi_model)));
                if (mc) detail::push_estimate(row, mc_expected_xi(cfg.params, cfg.stats, cfg.trials, sub, cfg.threads).xi);
                break;
            }
            case Output::r_c_star: {
                if (!design) {
                    row.insert(row.end(), mc ? 3 : 1, "");
                    break;
                }
                row.push_back(format_number(design->r_c_star));
                if (mc) {
                    SystemParams at_opt = cfg.params;
                    at_opt.p_b_max = design->p_b_max_star;
                    const Estimate d = mc_outage(make_outage_inputs(at_opt, cfg.stats), cfg.trials, sub, cfg.threads);
                    detail::push_estimate(row, {cfg.params.rate * (1.0 - d.value), cfg.params.rate * d.std_error,
                                                d.samples});
                }
                break;
            }
            case Output::p_b_max_star:
                row.push_back(design ? format_number(design->p_b_max_star) : "");
                break;
            case Output::t_eps:
                row.push_back(design ? format_number(design->t_eps) : "");
                break;
        }
    }
    if (unsatisfiable) row[0] = "unsatisfiable";
    return row;
}

/// Runs a sweep. Point i draws from RandomSource(seed, stream).substream(i),
/// so rows do not depend on evaluation order or thread count.
inline Table run_sweep(const ScenarioConfig& config, const SweepSpec& spec, std::uint64_t stream = 0) {
    validate(spec, config);
    Table t;
    t.header = sweep_header(spec, config);
    const RandomSource base(config.seed, stream);
    for (std::size_t i = 0; i < spec.steps; ++i) {
        const double shown = sweep_point(spec, i);
        ScenarioConfig point = config;
        detail::set_variable(point, spec.variable, spec.scale == Scale::db ? db_to_linear(shown) : shown);
        t.rows.push_back(sweep_row(point, spec, shown, base.substream(i)));
    }
    return t;
}

// ---- figure presets -------------------------------------------------------

enum class Preset { fig2, fig3, fig4 };

inline Preset parse_preset(std::string_view s) {
    if (s == "fig2") return Preset::fig2;
    if (s == "fig3") return Preset::fig3;
    if (s == "fig4") return Preset::fig4;
    throw ConfigError("unknown preset '" + std::string(s) + "' (expected fig2, fig3 or fig4)");
}

/// Caption parameters applied before any user config or --set overrides.
inline ScenarioConfig preset_defaults(Preset p, ScenarioConfig base = {}) {
    base.stats = ChannelStats{};
    switch (p) {
        case Preset::fig2:
            base.params.p_a = 1.0;
            base.params.phi = 0.01;
            break;
        case Preset::fig3:
            break;
        case Preset::fig4:
            base.params.rate = 1.0;
            base.params.sigma2_b = 1.0;
            base.params.phi = 0.01;
            break;
    }
    return base;
}

struct PresetOptions {
    Scale scale = Scale::db;
    std::vector<double> fig3_p_a_db{-10.0, 0.0, 10.0};  // not given numerically in the source figure
};

/// Runs every curve of a preset and stacks them, curve parameters first.
inline Table run_preset(Preset p, const ScenarioConfig& cfg, const PresetOptions& opt = {}) {
    struct Curve {
        std::vector<std::string> labels;
        ScenarioConfig config;
    };
    std::vector<std::string> curve_header;
    std::vector<Curve> curves;
    SweepSpec spec;
    spec.scale = opt.scale;

    auto range_db = [&](double lo_db, double hi_db, std::size_t steps) {
        spec.steps = steps;
        if (opt.scale == Scale::db) {
            spec.start = lo_db;
            spec.stop = hi_db;
        } else {
            spec.start = db_to_linear(lo_db);
            spec.stop = db_to_linear(hi_db);
        }
    };

    switch (p) {
        case Preset::fig2: {
            spec.variable = SweepVariable::p_b_max;
            spec.outputs = {Output::delta};
            range_db(-10.0, 30.0, 41);
            curve_header = {"sigma2_b_db", "rate"};
            for (double s_db : {-5.0, 0.0})
                for (double r : {0.5, 1.0}) {
                    ScenarioConfig c = cfg;
                    c.params.sigma2_b = db_to_linear(s_db);
                    c.params.rate = r;
                    curves.push_back({{format_number(s_db), format_number(r)}, c});
                }
            break;
        }
        case Preset::fig3: {
            spec.variable = SweepVariable::p_b_max;
            spec.outputs = {Output::expected_xi};
            range_db(-20.0, 40.0, 61);
            curve_header = {"p_a_db"};
            if (opt.fig3_p_a_db.empty()) throw ConfigError("fig3 needs at least one P_a value");
            for (double pa_db : opt.fig3_p_a_db) {
                ScenarioConfig c = cfg;
                c.params.p_a = db_to_linear(pa_db);
                curves.push_back({{format_number(pa_db)}, c});
            }
            break;
        }
        case Preset::fig4: {
            spec.variable = SweepVariable::p_a;
            spec.outputs = {Output::r_c_star, Output::p_b_max_star, Output::t_eps};
            range_db(-10.0, 60.0, 36);
            curve_header = {"epsilon"};
            for (double eps : {0.05, 0.1, 0.2}) {
                ScenarioConfig c = cfg;
                c.epsilon = eps;
                curves.push_back({{format_number(eps)}, c});
            }
            break;
        }
    }

    Table out;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        Table t = run_sweep(curves[k].config, spec, k);
        if (k == 0) {
            out.header = curve_header;
            out.header.insert(out.header.end(), t.header.begin(), t.header.end());
        }
        for (auto& r : t.rows) {
            std::vector<std::string> row = curves[k].labels;
            row.insert(row.end(), r.begin(), r.end());
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

}  // namespace fdcovert::harness

#endif
