#include "fourier/runner.hpp"

#include "fourier/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace fourier {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

long long axis_points(RuleKind kind, int level, bool halved) {
    const FullLineRule& rule = full_line_nodes(kind, level);
    if (halved) {
        return static_cast<long long>(rule.pair_nodes.size()) +
               (rule.has_center ? 1 : 0);
    }
    return rule.point_count();
}

long long tensor_points(RuleKind kind, int level, int dim, bool half_space) {
    long long total = 1;
    for (int i = 0; i < dim; ++i) {
        total *= axis_points(kind, level, half_space && i == 0);
        if (total < 0) return std::numeric_limits<long long>::max();
    }
    return total;
}

long long smolyak_points(RuleKind kind, int level, int dim, bool half_space) {
    long long total = 0;
    MultiIndex beta(dim, 1);
    // Every tensor in the downward closure of the simplex gets evaluated once.
    std::function<void(int, int)> walk = [&](int axis, int left) {
        if (axis == dim) {
            long long pts = 1;
            for (int i = 0; i < dim; ++i) {
                pts *= axis_points(kind, level_nodes(LevelMap::Exponential, beta[i]),
                                   half_space && i == 0);
            }
            total += pts;
            return;
        }
        for (int l = 0; l <= left; ++l) {
            beta[axis] = 1 + l;
            walk(axis + 1, left - l);
        }
        beta[axis] = 1;
    };
    walk(0, level);
    return total;
}

struct ResolvedDamping {
    DampingVector damping;
    bool converged = true;
};

ResolvedDamping resolve_damping(const ExperimentConfig& config) {
    switch (config.damping_mode) {
    case DampingMode::Fixed:
        return {make_damping(config.model, config.payoff, config.damping_fixed), true};
    case DampingMode::Optimal: {
        DampingResult dr = optimal_damping(config.model, config.payoff);
        return {std::move(dr.damping), dr.converged};
    }
    case DampingMode::OptimalOffset: {
        const int d = config.model.dim();
        if (static_cast<int>(config.damping_offset.size()) != d) {
            throw ConfigError("damping offset has length " +
                              std::to_string(config.damping_offset.size()) +
                              ", expected " + std::to_string(d));
        }
        DampingResult dr = optimal_damping(config.model, config.payoff);
        Vec shifted = dr.damping.R;
        for (int i = 0; i < d; ++i) shifted[i] += config.damping_offset[i];
        return {make_damping(config.model, config.payoff, std::move(shifted)),
                dr.converged};
    }
    }
    throw ConfigError("unknown damping mode");
}

GridSpec make_grid_spec(const ExperimentConfig& config, const Integrand& f) {
    GridSpec spec;
    spec.kind = config.rule;
    spec.half_space = config.half_space;
    spec.eval_budget = config.budget;
    const int d = config.model.dim();
    spec.scales = config.scaled ? efold_scales(f, d) : Vec(d, 1.0);
    return spec;
}

} // namespace

std::string to_string(Method m) {
    switch (m) {
    case Method::TP: return "TP";
    case Method::SM: return "SM";
    case Method::ASGQ: return "ASGQ";
    case Method::MC: return "MC";
    case Method::COS2D: return "COS2D";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    const std::string u = upper(s);
    if (u == "TP") return Method::TP;
    if (u == "SM") return Method::SM;
    if (u == "ASGQ") return Method::ASGQ;
    if (u == "MC") return Method::MC;
    if (u == "COS2D" || u == "COS") return Method::COS2D;
    throw ConfigError("unknown method '" + s + "'");
}

std::string to_string(DampingMode m) {
    switch (m) {
    case DampingMode::Optimal: return "optimal";
    case DampingMode::Fixed: return "fixed";
    case DampingMode::OptimalOffset: return "optimal_offset";
    }
    return "?";
}

DampingMode damping_mode_from_string(const std::string& s) {
    if (s == "optimal") return DampingMode::Optimal;
    if (s == "fixed") return DampingMode::Fixed;
    if (s == "optimal_offset" || s == "offset") return DampingMode::OptimalOffset;
    throw ConfigError("unknown damping mode '" + s + "'");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["model"] = model.to_json();
    j["payoff"] = payoff.to_json();
    j["method"] = fourier::to_string(method);
    j["quadrature"] = {{"rule", fourier::to_string(rule)},
                       {"scaled", scaled},
                       {"half_space", half_space},
                       {"level", level},
                       {"budget", budget},
                       {"threshold", threshold}};
    j["mc"] = {{"samples", mc_samples}, {"seed", seed}, {"threads", threads}};
    j["cos"] = {{"n_cos", cos.n_cos},
                {"q", cos.q},
                {"truncation_width", cos.truncation_width}};
    nlohmann::json damping;
    damping["mode"] = fourier::to_string(damping_mode);
    if (damping_mode == DampingMode::Fixed) damping["R"] = damping_fixed;
    if (damping_mode == DampingMode::OptimalOffset) damping["offset"] = damping_offset;
    j["damping"] = damping;
    if (reference) {
        nlohmann::json ref;
        ref["value"] = *reference;
        if (reference_error) ref["stat_error"] = *reference_error;
        j["reference"] = ref;
    }
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    std::optional<ExperimentConfig> parsed;
    if (j.contains("example")) {
        const RegistryEntry& entry = example(j.at("example").get<int>());
        Method m = Method::TP;
        if (j.contains("method")) m = method_from_string(j.at("method").get<std::string>());
        parsed = from_registry(entry, m);
        if (j.contains("model")) parsed->model = ModelSpec::from_json(j.at("model"));
        if (j.contains("payoff")) parsed->payoff = PayoffSpec::from_json(j.at("payoff"));
    } else {
        if (!j.contains("model") || !j.contains("payoff")) {
            throw ConfigError("config needs either 'example' or both 'model' and 'payoff'");
        }
        parsed = ExperimentConfig(ModelSpec::from_json(j.at("model")),
                                  PayoffSpec::from_json(j.at("payoff")));
    }
    ExperimentConfig& config = *parsed;
    if (config.model.dim() != config.payoff.dim()) {
        throw ConfigError("model dimension " + std::to_string(config.model.dim()) +
                          " does not match payoff dimension " +
                          std::to_string(config.payoff.dim()));
    }
    if (j.contains("method")) {
        config.method = method_from_string(j.at("method").get<std::string>());
    }
    if (j.contains("quadrature")) {
        const nlohmann::json& q = j.at("quadrature");
        if (q.contains("rule")) {
            config.rule = rule_kind_from_string(q.at("rule").get<std::string>());
        }
        if (q.contains("scaled")) config.scaled = q.at("scaled").get<bool>();
        if (q.contains("half_space")) config.half_space = q.at("half_space").get<bool>();
        if (q.contains("level")) config.level = q.at("level").get<int>();
        if (q.contains("budget")) config.budget = q.at("budget").get<long long>();
        if (q.contains("threshold")) config.threshold = q.at("threshold").get<double>();
    }
    if (j.contains("mc")) {
        const nlohmann::json& m = j.at("mc");
        if (m.contains("samples")) config.mc_samples = m.at("samples").get<long long>();
        if (m.contains("seed")) config.seed = m.at("seed").get<std::uint64_t>();
        if (m.contains("threads")) config.threads = m.at("threads").get<int>();
    }
    if (j.contains("cos")) {
        const nlohmann::json& c = j.at("cos");
        if (c.contains("n_cos")) config.cos.n_cos = c.at("n_cos").get<int>();
        if (c.contains("q")) config.cos.q = c.at("q").get<int>();
        if (c.contains("truncation_width")) {
            config.cos.truncation_width = c.at("truncation_width").get<double>();
        }
    }
    if (j.contains("damping")) {
        const nlohmann::json& damping = j.at("damping");
        config.damping_mode =
            damping_mode_from_string(damping.at("mode").get<std::string>());
        if (config.damping_mode == DampingMode::Fixed) {
            config.damping_fixed = damping.at("R").get<Vec>();
        }
        if (config.damping_mode == DampingMode::OptimalOffset) {
            config.damping_offset = damping.at("offset").get<Vec>();
        }
    }
    if (j.contains("reference")) {
        const nlohmann::json& ref = j.at("reference");
        config.reference = ref.at("value").get<double>();
        if (ref.contains("stat_error")) {
            config.reference_error = ref.at("stat_error").get<double>();
        }
    }
    return config;
}

ExperimentConfig ExperimentConfig::from_registry(const RegistryEntry& entry,
                                                 Method method) {
    ExperimentConfig config(entry.model, entry.payoff);
    config.method = method;
    config.rule = entry.quad_rule;
    config.scaled = entry.quad_scaled;
    config.level = entry.quad_level;
    config.reference = entry.reference;
    config.reference_error = entry.stat_error;
    return config;
}

nlohmann::json PriceReport::to_json() const {
    nlohmann::json j;
    j["method"] = fourier::to_string(method);
    j["estimate"] = estimate;
    j["relative_error"] =
        relative_error ? nlohmann::json(*relative_error) : nlohmann::json();
    j["N"] = n;
    j["N_eval"] = n_eval;
    j["damping"] = damping;
    j["wall_time_s"] = wall_time_s;
    j["budget_exhausted"] = budget_exhausted;
    j["damping_converged"] = damping_converged;
    if (!index_set.empty()) j["index_set"] = index_set;
    if (method == Method::MC) {
        j["mc"] = {{"std_dev", mc_std_dev},
                   {"rel_stat_error", mc_rel_stat_error},
                   {"seed", seed}};
    }
    return j;
}

PriceReport run(const ExperimentConfig& config) {
    if (config.model.dim() != config.payoff.dim()) {
        throw ConfigError("model dimension " + std::to_string(config.model.dim()) +
                          " does not match payoff dimension " +
                          std::to_string(config.payoff.dim()));
    }
    PriceReport report;
    report.method = config.method;

    const auto start = std::chrono::steady_clock::now();
    switch (config.method) {
    case Method::TP:
    case Method::SM:
    case Method::ASGQ: {
        ResolvedDamping resolved = resolve_damping(config);
        report.damping = resolved.damping.R;
        report.damping_converged = resolved.converged;
        GFunction gf(config.model, config.payoff, resolved.damping.R);
        const Integrand f = [&gf](const Vec& u) { return gf(u); };
        const GridSpec spec = make_grid_spec(config, f);
        QuadResult result;
        if (config.method == Method::TP) {
            result = tensor_estimate(f, config.model.dim(), config.level, spec);
        } else if (config.method == Method::SM) {
            result = smolyak_estimate(f, config.model.dim(), config.level, spec);
        } else {
            AsgqOptions opts;
            opts.threshold = config.threshold;
            result = asgq_estimate(f, config.model.dim(), spec, opts);
        }
        report.estimate = result.value;
        report.n = result.n_paper;
        report.n_eval = result.n_eval;
        report.budget_exhausted = result.budget_exhausted;
        report.index_set = result.accepted;
        report.index_set.insert(report.index_set.end(), result.active.begin(),
                                result.active.end());
        break;
    }
    case Method::MC: {
        const MCResult result = mc_price(config.model, config.payoff,
                                         config.mc_samples, config.seed,
                                         config.threads);
        report.estimate = result.estimate;
        report.n = result.m;
        report.n_eval = result.m;
        report.mc_std_dev = result.std_dev;
        report.mc_rel_stat_error = result.rel_stat_error;
        report.seed = result.seed;
        break;
    }
    case Method::COS2D: {
        const CosResult result = cos2d_price(config.model, config.payoff, config.cos);
        report.estimate = result.value;
        report.n = config.cos.n_cos;
        report.n_eval = result.n_cf;
        break;
    }
    }
    const auto stop = std::chrono::steady_clock::now();
    report.wall_time_s = std::chrono::duration<double>(stop - start).count();

    if (config.reference && *config.reference != 0.0) {
        report.relative_error =
            std::abs(report.estimate - *config.reference) / std::abs(*config.reference);
    }
    return report;
}

std::vector<PriceReport> sweep(const ExperimentConfig& config,
                               const std::vector<long long>& budgets) {
    for (std::size_t i = 1; i < budgets.size(); ++i) {
        if (budgets[i] <= budgets[i - 1]) {
            throw ConfigError("sweep budgets must be strictly increasing");
        }
    }
    if (budgets.empty()) return {};

    ExperimentConfig base = config;
    if (!base.reference) {
        const MCResult pre = mc_price(base.model, base.payoff, base.mc_samples,
                                      base.seed, base.threads);
        base.reference = pre.estimate;
        base.reference_error = pre.rel_stat_error;
    }

    const int d = base.model.dim();
    std::vector<PriceReport> reports;
    reports.reserve(budgets.size());
    for (long long budget : budgets) {
        if (budget < 1) throw ConfigError("sweep budgets must be positive");
        ExperimentConfig step = base;
        step.budget = -1;
        switch (base.method) {
        case Method::TP: {
            int level = 1;
            while (level + 1 <= kRuleSizeCap &&
                   tensor_points(base.rule, level + 1, d, base.half_space) <= budget) {
                ++level;
            }
            step.level = level;
            break;
        }
        case Method::SM: {
            int level = 0;
            while (smolyak_points(base.rule, level + 1, d, base.half_space) <= budget) {
                ++level;
            }
            step.level = level;
            break;
        }
        case Method::ASGQ:
            step.budget = budget;
            break;
        case Method::MC:
            step.mc_samples = budget;
            break;
        case Method::COS2D: {
            int n = 1;
            auto cost = [d](int m) {
                double c = d == 1 ? m : 2.0 * m * m;
                return static_cast<long long>(c);
            };
            while (cost(n + 1) <= budget) ++n;
            step.cos.n_cos = n;
            break;
        }
        }
        reports.push_back(run(step));
    }
    return reports;
}

std::string to_csv(const std::vector<PriceReport>& reports) {
    std::ostringstream out;
    out << "method,N,N_eval,estimate,relative_error,wall_time_s\n";
    for (const PriceReport& r : reports) {
        out << fourier::to_string(r.method) << ',' << r.n << ',' << r.n_eval << ','
            << std::setprecision(17) << r.estimate << ',';
        if (r.relative_error) out << std::setprecision(17) << *r.relative_error;
        out << ',' << std::setprecision(6) << r.wall_time_s << '\n';
    }
    return out.str();
}

} // namespace fourier
