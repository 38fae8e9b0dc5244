#include "fourier/registry.hpp"
#include "fourier/errors.hpp"

#include <nlohmann/json.hpp>

#include <utility>

namespace fourier {

namespace {

constexpr double kSpot = 100.0;
constexpr double kRate = 0.0;
constexpr double kMaturity = 1.0;

PayoffSpec make_payoff(PayoffFamily family, double strike, int d) {
    return family == PayoffFamily::BasketPut ? PayoffSpec::basket_put_equal(strike, d)
                                             : PayoffSpec::call_on_min(strike, d);
}

std::string entry_name(const ModelSpec& model, const PayoffSpec& payoff) {
    return to_string(model.family()) + "-" + std::to_string(model.dim()) + "d-" +
           to_string(payoff.family());
}

RegistryEntry make_entry(int id, ModelSpec model, PayoffFamily pf, double strike,
                         double ref, double err, Vec r_table, Vec r_ref) {
    const int d = model.dim();
    PayoffSpec payoff = make_payoff(pf, strike, d);

    // tensor settings that reach the golden-price tolerance at desk scale
    RuleKind rule = d <= 4 ? RuleKind::Laguerre : RuleKind::Hermite;
    bool scaled = true;
    int level = d == 2 ? 16 : (d == 4 ? 12 : 5);
    if (id == 23) {
        rule = RuleKind::Laguerre;
        scaled = false;
        level = 3;
    }

    std::string name = entry_name(model, payoff);
    return RegistryEntry{id,
                         std::move(name),
                         std::move(model),
                         std::move(payoff),
                         ref,
                         err,
                         std::move(r_table),
                         std::move(r_ref),
                         rule,
                         scaled,
                         level};
}

ModelSpec gbm(Vec sigma) {
    const int d = static_cast<int>(sigma.size());
    return ModelSpec::gbm(Vec(d, kSpot), kRate, kMaturity, std::move(sigma));
}

ModelSpec vg(Vec sigma, Vec theta) {
    const int d = static_cast<int>(sigma.size());
    return ModelSpec::vg(Vec(d, kSpot), kRate, kMaturity, std::move(sigma),
                         std::move(theta), 0.257);
}

ModelSpec nig(double alpha, Vec beta, double delta) {
    const int d = static_cast<int>(beta.size());
    return ModelSpec::nig(Vec(d, kSpot), kRate, kMaturity, alpha, std::move(beta),
                          delta);
}

constexpr PayoffFamily kPut = PayoffFamily::BasketPut;
constexpr PayoffFamily kMin = PayoffFamily::CallOnMin;

std::vector<RegistryEntry> build_registry() {
    std::vector<RegistryEntry> r;
    r.reserve(36);

    r.push_back(make_entry(1, gbm({0.4, 0.4}), kPut, 100.0, 11.4474, 8e-4,
                           {2.5, 2.5}, {2.489769, 2.489769}));
    r.push_back(make_entry(2, gbm({0.4, 0.8}), kPut, 100.0, 17.831, 1.2e-3,
                           {2.1, 1.2}, {2.073364, 1.243612}));
    r.push_back(make_entry(3, gbm({0.4, 0.4}), kMin, 100.0, 3.4603, 6e-4,
                           {-3.4, -3.4}, {-3.408284, -3.408284}));
    r.push_back(make_entry(4, gbm({0.4, 0.8}), kMin, 100.0, 3.7411, 8.2e-4,
                           {-3.6, -1.8}, {-3.640546, -1.749205}));
    r.push_back(make_entry(5, gbm(Vec(4, 0.4)), kPut, 100.0, 8.193, 6e-4,
                           Vec(4, 2.1), Vec(4, 2.114732)));
    r.push_back(make_entry(6, gbm({0.2, 0.4, 0.6, 0.8}), kPut, 100.0, 11.3014, 8e-4,
                           {2.4, 1.9, 1.5, 1.2}, {2.35965, 1.90721, 1.492139, 1.172679}));
    r.push_back(make_entry(7, gbm(Vec(4, 0.4)), kMin, 100.0, 0.317, 2e-4,
                           Vec(4, -3.1), Vec(4, -3.080723)));
    r.push_back(make_entry(8, gbm({0.2, 0.4, 0.6, 0.8}), kMin, 100.0, 0.2382, 1e-4,
                           {-6.4, -3.1, -2.1, -1.6},
                           {-6.437784, -3.057661, -2.070118, -1.603086}));
    r.push_back(make_entry(9, gbm(Vec(6, 0.4)), kPut, 60.0, 0.0041, 8.8e-6,
                           Vec(6, 2.0), Vec(6, 3.912674)));
    r.push_back(make_entry(10, gbm({0.2, 0.3, 0.4, 0.5, 0.6, 0.7}), kPut, 60.0,
                           0.012702, 1.8e-5, {2.3, 2.1, 1.9, 1.7, 1.5, 1.3},
                           {5.580235, 4.593181, 3.76643, 3.11374, 2.603775, 2.202708}));
    r.push_back(make_entry(11, gbm(Vec(6, 0.4)), kMin, 100.0, 0.038, 4.4e-5,
                           Vec(6, -3.0), Vec(6, -2.973238)));
    r.push_back(make_entry(12, gbm({0.2, 0.3, 0.4, 0.5, 0.6, 0.7}), kMin, 100.0,
                           0.0301, 3.7e-5, {-6.0, -3.9, -3.0, -2.4, -2.0, -1.8},
                           {-6.027974, -3.936328, -2.958043, -2.392673, -2.025088, -1.767403}));

    r.push_back(make_entry(13, vg({0.4, 0.4}, {-0.3, -0.3}), kPut, 100.0, 11.7589,
                           1e-3, {1.7, 1.7}, {1.680782, 1.680782}));
    r.push_back(make_entry(14, vg({0.4, 0.8}, {-0.3, 0.0}), kPut, 100.0, 17.6688,
                           1.2e-3, {1.7, 1.0}, {1.663654, 1.043121}));
    r.push_back(make_entry(15, vg({0.4, 0.4}, {-0.3, -0.3}), kMin, 100.0, 3.9601,
                           7e-4, {-3.5, -3.5}, {-3.461169, -3.461169}));
    r.push_back(make_entry(16, vg({0.4, 0.8}, {-0.3, 0.0}), kMin, 100.0, 3.3422,
                           8e-4, {-4.0, -3.5}, {-3.500169, -1.560287}));
    r.push_back(make_entry(17, vg(Vec(4, 0.4), Vec(4, -0.3)), kPut, 100.0, 8.9441,
                           8e-4, Vec(4, 1.2), Vec(4, 1.198132)));
    r.push_back(make_entry(18, vg({0.2, 0.4, 0.6, 0.8}, {-0.3, -0.2, -0.1, 0.0}),
                           kPut, 100.0, 11.2277, 8e-4, {1.6, 1.4, 1.1, 0.9},
                           {1.627021, 1.369758, 1.102223, 0.883383}));
    r.push_back(make_entry(19, vg(Vec(4, 0.4), Vec(4, -0.3)), kMin, 100.0, 0.6137,
                           2e-4, Vec(4, -3.2), Vec(4, -3.193515)));
    r.push_back(make_entry(20, vg({0.2, 0.4, 0.6, 0.8}, {-0.3, -0.2, -0.1, 0.0}),
                           kMin, 100.0, 0.2384, 1e-4, {-6.6, -3.0, -2.0, -1.5},
                           {-6.63383, -2.984356, -1.991666, -1.542654}));
    r.push_back(make_entry(21, vg(Vec(6, 0.4), Vec(6, -0.3)), kPut, 60.0, 0.1691,
                           1e-6, Vec(6, 1.1), Vec(6, 1.113406)));
    r.push_back(make_entry(22, vg({0.2, 0.3, 0.4, 0.5, 0.6, 0.7},
                              {-0.3, -0.2, -0.1, 0.0, 0.1, 0.2}),
                           kPut, 60.0, 0.04634, 5e-5, {2.1, 1.9, 1.7, 1.6, 1.4, 1.2},
                           {2.094096, 1.942801, 1.744019, 1.545313, 1.364966, 1.207077}));
    r.push_back(make_entry(23, vg(Vec(6, 0.4), Vec(6, -0.3)), kMin, 100.0, 0.16248,
                           1e-4, Vec(6, -3.1), Vec(6, -3.129007)));
    r.push_back(make_entry(24, vg({0.2, 0.3, 0.4, 0.5, 0.6, 0.7},
                              {-0.3, -0.2, -0.1, 0.0, 0.1, 0.2}),
                           kMin, 100.0, 0.02269, 4e-5,
                           {-6.5, -3.7, -2.6, -2.0, -1.7, -1.4},
                           {-6.46116, -3.686654, -2.58862, -2.01522, -1.668427, -1.439441}));

    r.push_back(make_entry(25, nig(15.0, {-3.0, -3.0}, 0.2), kPut, 100.0, 3.3199,
                           3e-4, {6.1, 6.1}, {6.084792, 6.084792}));
    r.push_back(make_entry(26, nig(10.0, {-3.0, 0.0}, 0.2), kPut, 100.0, 3.8978,
                           4e-4, {4.6, 4.8}, {4.562382, 4.824162}));
    r.push_back(make_entry(27, nig(15.0, {-3.0, -3.0}, 0.2), kMin, 100.0, 1.2635,
                           2e-4, {-9.9, -9.9}, {-9.883544, -9.883544}));
    r.push_back(make_entry(28, nig(10.0, {-3.0, 0.0}, 0.2), kMin, 100.0, 1.4476,
                           2e-4, {-7.5, -6.8}, {-7.533862, -6.764062}));
    r.push_back(make_entry(29, nig(15.0, Vec(4, -3.0), 0.2), kPut, 100.0, 2.554,
                           3e-4, Vec(4, 4.0), Vec(4, 3.981493)));
    r.push_back(make_entry(30, nig(15.0, {-3.0, -2.0, -1.0, 0.0}, 0.4), kPut, 100.0,
                           3.307, 3e-4, {4.0, 4.2, 4.2, 4.2},
                           {4.108525, 4.154158, 4.20206, 4.251085}));
    r.push_back(make_entry(31, nig(15.0, Vec(4, -3.0), 0.2), kMin, 100.0, 0.17374,
                           5e-5, Vec(4, -8.8), Vec(4, -8.602337)));
    r.push_back(make_entry(32, nig(15.0, {-3.0, -2.0, -1.0, 0.0}, 0.4), kMin, 100.0,
                           0.20327, 7e-5, {-6.5, -6.4, -6.3, -6.2},
                           {-6.553724, -6.418403, -6.276288, -6.13391}));
    r.push_back(make_entry(33, nig(15.0, Vec(6, -3.0), 0.2), kPut, 80.0, 0.01039,
                           2e-5, Vec(6, 3.1), Vec(6, 3.046413)));
    r.push_back(make_entry(34, nig(15.0, {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0}, 0.2),
                           kPut, 80.0, 4.39e-4, 3e-6, {4.5, 4.6, 4.7, 4.8, 4.8, 4.9},
                           {4.870534, 5.043236, 5.222153, 5.406738, 5.596391, 5.7904}));
    r.push_back(make_entry(35, nig(15.0, Vec(6, -3.0), 0.2), kMin, 110.0, 6.034e-5,
                           4e-6, Vec(6, -4.0), Vec(6, -8.655602)));
    r.push_back(make_entry(36, nig(15.0, {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0}, 0.2),
                           kMin, 110.0, 1.572e-4, 2e-6,
                           {-3.2, -3.2, -3.1, -3.2, -3.2, -3.2},
                           {-7.543809, -7.026251, -6.526378, -6.049089, -5.598572, -5.178274}));
    return r;
}

} // namespace

nlohmann::json RegistryEntry::to_json() const {
    return nlohmann::json{{"id", id},
                          {"name", name},
                          {"model", model.to_json()},
                          {"payoff", payoff.to_json()},
                          {"reference", reference},
                          {"stat_error", stat_error},
                          {"damping_table", damping_table},
                          {"damping_ref", damping_ref},
                          {"quadrature",
                           {{"rule", to_string(quad_rule)},
                            {"scaled", quad_scaled},
                            {"tensor_level", quad_level}}}};
}

RegistryEntry RegistryEntry::from_json(const nlohmann::json& j) {
    const auto& q = j.at("quadrature");
    return RegistryEntry{j.at("id").get<int>(),
                         j.at("name").get<std::string>(),
                         ModelSpec::from_json(j.at("model")),
                         PayoffSpec::from_json(j.at("payoff")),
                         j.at("reference").get<double>(),
                         j.at("stat_error").get<double>(),
                         j.at("damping_table").get<Vec>(),
                         j.at("damping_ref").get<Vec>(),
                         rule_kind_from_string(q.at("rule").get<std::string>()),
                         q.at("scaled").get<bool>(),
                         q.at("tensor_level").get<int>()};
}

const std::vector<RegistryEntry>& example_registry() {
    static const std::vector<RegistryEntry> registry = build_registry();
    return registry;
}

const RegistryEntry& example(int id) {
    const auto& registry = example_registry();
    if (id < 1 || id > static_cast<int>(registry.size()))
        throw ConfigError("example: id must be between 1 and " +
                          std::to_string(registry.size()));
    return registry[id - 1];
}

} // namespace fourier
