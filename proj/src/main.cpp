#include "fourier/errors.hpp"
#include "fourier/runner.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using fourier::ExperimentConfig;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    int example_id = 0;
    std::string method;
    std::optional<std::uint64_t> seed;
    std::optional<long long> budget;
    std::vector<long long> budgets;
};

void add_input_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "JSON experiment file (one object or an array)");
    cmd->add_option("--example", args.example_id,
                    "registry entry id (1-36) instead of --config")
        ->check(CLI::Range(1, 36));
    cmd->add_option("--method", args.method,
                    "method override: TP, SM, ASGQ, MC, COS2D");
    cmd->add_option("--seed", args.seed, "Monte Carlo seed override");
    cmd->add_option("--out", args.out_path, "output file (default: stdout)");
}

std::vector<ExperimentConfig> load_configs(const CommonArgs& args) {
    std::vector<ExperimentConfig> configs;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) {
            throw fourier::ConfigError("cannot open config file '" +
                                       args.config_path + "'");
        }
        const nlohmann::json j = nlohmann::json::parse(in);
        if (j.is_array()) {
            for (const nlohmann::json& item : j) {
                configs.push_back(ExperimentConfig::from_json(item));
            }
        } else {
            configs.push_back(ExperimentConfig::from_json(j));
        }
    } else if (args.example_id > 0) {
        fourier::Method m = fourier::Method::TP;
        if (!args.method.empty()) m = fourier::method_from_string(args.method);
        configs.push_back(ExperimentConfig::from_registry(
            fourier::example(args.example_id), m));
    } else {
        throw fourier::ConfigError("either --config or --example is required");
    }
    for (ExperimentConfig& config : configs) {
        if (!args.method.empty() && args.config_path.empty()) {
            config.method = fourier::method_from_string(args.method);
        }
        if (args.seed) config.seed = *args.seed;
        if (args.budget) config.budget = *args.budget;
    }
    return configs;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw fourier::ConfigError("cannot open output file '" + out_path + "'");
    }
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

int run_price(const CommonArgs& args) {
    const std::vector<ExperimentConfig> configs = load_configs(args);
    nlohmann::json out = nlohmann::json::array();
    bool failed = false;
    for (const ExperimentConfig& config : configs) {
        try {
            out.push_back(fourier::run(config).to_json());
        } catch (const std::exception& e) {
            out.push_back({{"error", e.what()}});
            failed = true;
        }
    }
    emit(configs.size() == 1 ? out.front().dump(2) : out.dump(2), args.out_path);
    return failed ? 1 : 0;
}

int run_sweep(const CommonArgs& args) {
    std::vector<ExperimentConfig> configs = load_configs(args);
    if (configs.size() != 1) {
        throw fourier::ConfigError("sweep takes exactly one experiment");
    }
    const std::vector<fourier::PriceReport> reports =
        fourier::sweep(configs.front(), args.budgets);
    emit(fourier::to_csv(reports), args.out_path);
    return 0;
}

int run_registry(const std::string& out_path) {
    nlohmann::json out = nlohmann::json::array();
    for (const fourier::RegistryEntry& entry : fourier::example_registry()) {
        out.push_back(entry.to_json());
    }
    emit(out.dump(2), out_path);
    return 0;
}

int run_optimize(const CommonArgs& args) {
    const std::vector<ExperimentConfig> configs = load_configs(args);
    nlohmann::json out = nlohmann::json::array();
    for (const ExperimentConfig& config : configs) {
        const fourier::DampingResult result =
            fourier::optimal_damping(config.model, config.payoff);
        out.push_back({{"R", result.damping.R},
                       {"log_g0", result.objective},
                       {"iterations", result.iterations},
                       {"converged", result.converged}});
    }
    emit(configs.size() == 1 ? out.front().dump(2) : out.dump(2), args.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier pricing of multi-asset European options"};
    app.require_subcommand(1);

    CommonArgs price_args;
    CLI::App* price = app.add_subcommand("price", "price one or more experiments");
    add_input_flags(price, price_args);
    price->add_option("--budget", price_args.budget,
                      "evaluation budget override (quadrature methods)");

    CommonArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "convergence table over increasing evaluation budgets");
    add_input_flags(sweep, sweep_args);
    sweep->add_option("--budget", sweep_args.budgets,
                      "evaluation budgets, strictly increasing (repeatable)")
        ->required();

    std::string registry_out;
    CLI::App* registry =
        app.add_subcommand("registry", "print the example registry as JSON");
    registry->add_option("--out", registry_out, "output file (default: stdout)");

    CommonArgs opt_args;
    CLI::App* optimize = app.add_subcommand(
        "optimize-damping", "report the optimal damping vector for an experiment");
    add_input_flags(optimize, opt_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (price->parsed()) return run_price(price_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (registry->parsed()) return run_registry(registry_out);
        if (optimize->parsed()) return run_optimize(opt_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
