// fdcovert: sweeps, figure presets, verification and point evaluation for the
// full-duplex covert communication model.
//
//   fdcovert preset fig2 --out fig2.csv
//   fdcovert sweep --var p_a --scale db --start -10 --stop 40 --steps 26 --outputs r_c_star --set epsilon=0.1
//   fdcovert verify all --trials 100000
//   fdcovert eval r_c_star --set epsilon=0.05

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdcovert/covertness.hpp"
#include "fdcovert/harness/config.hpp"
#include "fdcovert/harness/sweep.hpp"
#include "fdcovert/harness/verify.hpp"
#include "fdcovert/link.hpp"

namespace {

using namespace fdcovert;
using namespace fdcovert::harness;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<unsigned> threads;
    std::vector<std::string> overrides;
    std::string scale = "db";
};

ScenarioConfig build_config(const CommonOptions& o, ScenarioConfig base) {
    if (!o.config_path.empty()) base = parse_config(o.config_path, base);
    if (o.seed) base.seed = *o.seed;
    if (o.trials) apply_setting(base, "trials", std::to_string(*o.trials), "--trials");
    if (o.threads) base.threads = *o.threads;
    for (const auto& s : o.overrides) apply_override(base, s);
    return base;
}

Scale parse_scale(const std::string& s) {
    if (s == "db") return Scale::db;
    if (s == "linear") return Scale::linear;
    throw ConfigError("--scale must be 'db' or 'linear'");
}

void emit(const Table& t, const std::string& out_path) {
    if (out_path.empty()) {
        write_csv(std::cout, t);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError(out_path + ": cannot open for writing");
    write_csv(out, t);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) parts.push_back(item);
    return parts;
}

int run_eval(const ScenarioConfig& cfg, std::vector<std::string> quantities) {
    validate(cfg.params);
    validate(cfg.stats);
    if (quantities.empty()) {
        quantities = {"t", "expected_xi", "prob_rho1_geq_rho2", "delta"};
        if (cfg.epsilon) quantities.insert(quantities.end(), {"t_eps", "p_b_max_star", "r_c_star", "r_c_limit"});
    }
    auto need_eps = [&]() {
        if (!cfg.epsilon) throw ConfigError("this quantity needs epsilon (e.g. --set epsilon=0.1)");
        return *cfg.epsilon;
    };
    for (const auto& q : quantities) {
        double v = 0.0;
        if (q == "t") v = t_of_powers(cfg.params, cfg.stats);
        else if (q == "expected_xi") v = expected_xi_star(t_of_powers(cfg.params, cfg.stats), cfg.xi_model);
        else if (q == "prob_rho1_geq_rho2") v = prob_rho1_geq_rho2(cfg.params, cfg.stats);
        else if (q == "delta") v = outage_probability(make_outage_inputs(cfg.params, cfg.stats));
        else if (q == "t_eps") v = solve_t_epsilon(need_eps(), cfg.xi_model);
        else if (q == "p_b_max_star") v = optimal_pb_max(cfg.params.p_a, cfg.stats, need_eps(), cfg.xi_model);
        else if (q == "r_c_star") v = max_covert_rate(cfg.params, cfg.stats, need_eps(), cfg.xi_model);
        else if (q == "r_c_limit") v = covert_rate_limit(cfg.stats, cfg.params.rate, cfg.params.phi, need_eps(), cfg.xi_model);
        else throw ConfigError("unknown quantity '" + q + "'");
        std::cout << q << " = " << format_number(v) << '\n';
    }
    return kOk;
}

int run_verify(const ScenarioConfig& cfg, const std::string& suite, const std::string& out_path) {
    const VerifyReport report = verify(cfg, suite);
    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.suite << '.' << c.name << "  cases=" << c.cases
                  << "  deviation=" << format_number(c.deviation) << "  tolerance=" << format_number(c.tolerance)
                  << '\n';
    }
    if (!out_path.empty()) emit(to_table(report), out_path);
    if (!report.pass()) {
        for (const auto& c : report.checks)
            if (!c.pass) std::cerr << "verification failed: " << c.suite << '.' << c.name << '\n';
        return kVerifyFailed;
    }
    std::cout << "all checks passed\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covert communication with a full-duplex receiver: analysis, sweeps and verification"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    app.add_option("--config", common.config_path, "Key-value scenario file");
    app.add_option("--out", common.out_path, "CSV output path (default: stdout)");
    app.add_option("--seed", common.seed, "Random seed");
    app.add_option("--trials", common.trials, "Monte-Carlo samples per estimate (0 disables MC columns)");
    app.add_option("--threads", common.threads, "Worker threads (results do not depend on this)");
    app.add_option("--set", common.overrides, "Config override key=value (repeatable)")
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--scale", common.scale, "Scale of the swept variable: db or linear");

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and emit CSV");
    std::string var = "p_b_max", outputs = "delta";
    double start = -10.0, stop = 30.0;
    std::size_t steps = 41;
    sweep->add_option("--var", var, "p_b_max, p_a, epsilon, rate, sigma2_b or phi");
    sweep->add_option("--start", start);
    sweep->add_option("--stop", stop);
    sweep->add_option("--steps", steps);
    sweep->add_option("--outputs", outputs, "Comma list of delta, expected_xi, r_c_star, p_b_max_star, t_eps");

    auto* ver = app.add_subcommand("verify", "Compare closed forms with their oracles");
    std::string suite = "all";
    ver->add_option("suite", suite, "lemma1, theorem1, lemma2, theorem2, theorem3 or all");

    auto* preset = app.add_subcommand("preset", "Reproduce a figure's data (fig2, fig3, fig4)");
    std::string preset_name;
    std::vector<double> pa_db{-10.0, 0.0, 10.0};
    preset->add_option("name", preset_name)->required();
    preset->add_option("--pa-db", pa_db, "fig3: P_a values in dB, one curve each")->delimiter(',');

    auto* eval = app.add_subcommand("eval", "Evaluate quantities at a single point");
    std::vector<std::string> quantities;
    eval->add_option("quantities", quantities,
                     "t, expected_xi, prob_rho1_geq_rho2, delta, t_eps, p_b_max_star, r_c_star, r_c_limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        const Scale scale = parse_scale(common.scale);
        if (*sweep) {
            const ScenarioConfig cfg = build_config(common, {});
            SweepSpec spec;
            spec.variable = parse_variable(var);
            spec.start = start;
            spec.stop = stop;
            spec.steps = steps;
            spec.scale = app.get_option("--scale")->count() ? scale
                         : is_power(spec.variable)          ? Scale::db
                                                            : Scale::linear;
            for (const auto& o : split_list(outputs)) spec.outputs.push_back(parse_output(o));
            emit(run_sweep(cfg, spec), common.out_path);
            return kOk;
        }
        if (*ver) return run_verify(build_config(common, {}), suite, common.out_path);
        if (*preset) {
            const Preset p = parse_preset(preset_name);
            const ScenarioConfig cfg = build_config(common, preset_defaults(p));
            PresetOptions opt;
            opt.scale = scale;
            opt.fig3_p_a_db = pa_db;
            emit(run_preset(p, cfg, opt), common.out_path);
            return kOk;
        }
        if (*eval) return run_eval(build_config(common, {}), quantities);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kConfigError;
    } catch (const UnsatisfiableError& e) {
        std::cerr << "unsatisfiable: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
