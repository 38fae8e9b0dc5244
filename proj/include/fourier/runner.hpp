#pragma once

#include "fourier/cos2d.hpp"
#include "fourier/integrand.hpp"
#include "fourier/mc.hpp"
#include "fourier/models.hpp"
#include "fourier/payoffs.hpp"
#include "fourier/quadrature.hpp"
#include "fourier/registry.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fourier {

enum class Method { TP, SM, ASGQ, MC, COS2D };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

enum class DampingMode { Optimal, Fixed, OptimalOffset };

std::string to_string(DampingMode m);
DampingMode damping_mode_from_string(const std::string& s);

struct ExperimentConfig {
    ExperimentConfig(ModelSpec model_in, PayoffSpec payoff_in)
        : model(std::move(model_in)), payoff(std::move(payoff_in)) {}

    ModelSpec model;
    PayoffSpec payoff;
    Method method = Method::TP;

    RuleKind rule = RuleKind::Laguerre;
    bool scaled = true;
    bool half_space = false;
    int level = 8;              // TP nodes per axis, or Smolyak level
    long long budget = -1;      // evaluation budget (ASGQ stopping, TP/SM cap)
    double threshold = 0.0;     // ASGQ profit threshold

    long long mc_samples = 1000000;
    std::uint64_t seed = 0;
    int threads = 0;

    CosConfig cos;

    DampingMode damping_mode = DampingMode::Optimal;
    Vec damping_fixed;
    Vec damping_offset;

    std::optional<double> reference;
    std::optional<double> reference_error;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);

    // Entry defaults: frozen tensor settings, tabulated reference, optimal damping.
    static ExperimentConfig from_registry(const RegistryEntry& entry, Method method);
};

struct PriceReport {
    Method method = Method::TP;
    double estimate = 0.0;
    std::optional<double> relative_error;
    long long n = 0;      // N in the source's counting convention (M for MC)
    long long n_eval = 0; // integrand evaluations; chf evaluations for COS2D
    Vec damping;
    double wall_time_s = 0.0;
    bool budget_exhausted = false;
    bool damping_converged = true;
    std::vector<MultiIndex> index_set; // ASGQ accepted set followed by frontier
    double mc_std_dev = 0.0;
    double mc_rel_stat_error = 0.0;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
};

// Executes one experiment: damping resolution (timed), then the method.
// Offset damping outside the valuation strip is rejected before any pricing.
PriceReport run(const ExperimentConfig& config);

// One report per budget. Budgets translate to the method's natural size (TP
// nodes per axis, Smolyak level, ASGQ evaluation budget, MC samples, COS
// modes); the reported n_eval is the realized count. A missing reference is
// filled by a Monte Carlo pre-run at the config's sample count.
std::vector<PriceReport> sweep(const ExperimentConfig& config,
                               const std::vector<long long>& budgets);

// Fixed schema: method,N,N_eval,estimate,relative_error,wall_time_s.
std::string to_csv(const std::vector<PriceReport>& reports);

} // namespace fourier
