#include "fourier/errors.hpp"
#include "fourier/runner.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using fourier::DampingMode;
using fourier::ExperimentConfig;
using fourier::Method;
using fourier::ModelSpec;
using fourier::PayoffSpec;
using fourier::PriceReport;
using fourier::Vec;

namespace {

int count_fields(const std::string& line) {
    int fields = 1;
    for (char c : line) fields += c == ',';
    return fields;
}

ExperimentConfig put_1d(Method method) {
    ExperimentConfig config(ModelSpec::gbm({100.0}, 0.0, 1.0, {0.4}),
                            PayoffSpec::basket_put_equal(100.0, 1));
    config.method = method;
    config.reference = 15.851941887820608;
    return config;
}

} // namespace

TEST_CASE("registry entries price within their golden bands") {
    {
        ExperimentConfig config =
            ExperimentConfig::from_registry(fourier::example(1), Method::ASGQ);
        config.budget = 4096;
        const PriceReport report = fourier::run(config);
        const double band = std::max(3.0 * 8e-4 / 11.4474, 0.005);
        REQUIRE(report.relative_error.has_value());
        CHECK(*report.relative_error < band);
        CHECK(report.method == Method::ASGQ);
        CHECK_FALSE(report.index_set.empty());
    }
    {
        const ExperimentConfig config =
            ExperimentConfig::from_registry(fourier::example(25), Method::TP);
        const PriceReport report = fourier::run(config);
        const double band = std::max(3.0 * 3e-4 / 3.3199, 0.005);
        REQUIRE(report.relative_error.has_value());
        CHECK(*report.relative_error < band);
        CHECK(report.n == 16 * 16);
        CHECK(report.n_eval == 32 * 32);
    }
}

TEST_CASE("Monte Carlo runs are reproducible") {
    ExperimentConfig config =
        ExperimentConfig::from_registry(fourier::example(1), Method::MC);
    config.mc_samples = 100;
    config.seed = 9;
    const PriceReport a = fourier::run(config);
    const PriceReport b = fourier::run(config);
    CHECK(a.estimate == b.estimate);
    CHECK(a.mc_std_dev == b.mc_std_dev);
    CHECK(a.n_eval == 100);
    CHECK(a.seed == 9);
}

TEST_CASE("damping modes") {
    ExperimentConfig config =
        ExperimentConfig::from_registry(fourier::example(1), Method::TP);

    config.damping_mode = DampingMode::Fixed;
    config.damping_fixed = {2.5, 2.5};
    const PriceReport fixed = fourier::run(config);
    CHECK(fixed.damping == Vec{2.5, 2.5});

    config.damping_mode = DampingMode::Optimal;
    const PriceReport optimal = fourier::run(config);
    CHECK(std::abs(optimal.damping[0] - 2.4897693517142963) < 1e-6);

    config.damping_mode = DampingMode::OptimalOffset;
    config.damping_offset = {0.3, 0.3};
    const PriceReport offset = fourier::run(config);
    CHECK(offset.damping[0] == doctest::Approx(optimal.damping[0] + 0.3).epsilon(1e-9));

    // the offset run still prices inside the golden band
    REQUIRE(offset.relative_error.has_value());
    CHECK(*offset.relative_error < 0.005);
}

TEST_CASE("offset damping outside the strip is rejected before pricing") {
    ExperimentConfig config =
        ExperimentConfig::from_registry(fourier::example(1), Method::TP);
    config.damping_mode = DampingMode::OptimalOffset;
    config.damping_offset = {-5.0, -5.0}; // pushes a basket put below R = 0
    CHECK_THROWS_AS(fourier::run(config), fourier::StripViolation);

    config.damping_offset = {1.0};
    CHECK_THROWS_AS(fourier::run(config), fourier::ConfigError);
}

TEST_CASE("reports carry the relative-error identity") {
    ExperimentConfig config = put_1d(Method::TP);
    config.level = 24;
    const PriceReport report = fourier::run(config);
    REQUIRE(report.relative_error.has_value());
    CHECK(*report.relative_error ==
          doctest::Approx(std::abs(report.estimate - *config.reference) /
                          *config.reference)
              .epsilon(1e-14));
    CHECK(report.wall_time_s >= 0.0);
}

TEST_CASE("the one-dimensional pipeline is exact to tight tolerance") {
    ExperimentConfig config = put_1d(Method::TP);
    config.level = 48;
    const PriceReport report = fourier::run(config);
    CHECK(*report.relative_error < 1e-8);
}

TEST_CASE("COS runs report transform counts") {
    ExperimentConfig config =
        ExperimentConfig::from_registry(fourier::example(1), Method::COS2D);
    config.cos.n_cos = 64;
    const PriceReport report = fourier::run(config);
    CHECK(report.n == 64);
    CHECK(report.n_eval == 2 * 64 * 64);
    REQUIRE(report.relative_error.has_value());
    CHECK(*report.relative_error < 0.005);
}

TEST_CASE("sweep produces one row per budget in the fixed schema") {
    ExperimentConfig config = put_1d(Method::TP);
    const std::vector<fourier::PriceReport> reports =
        fourier::sweep(config, {8, 16, 32});
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].n_eval <= 8);
    CHECK(reports[1].n_eval <= 16);
    CHECK(reports[2].n_eval <= 32);

    const std::string csv = fourier::to_csv(reports);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "method,N,N_eval,estimate,relative_error,wall_time_s");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(count_fields(line) == 6);
        CHECK(line.substr(0, 3) == "TP,");
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("sweep validates its budget list") {
    ExperimentConfig config = put_1d(Method::TP);
    CHECK(fourier::sweep(config, {}).empty());
    CHECK_THROWS_AS(fourier::sweep(config, {32, 16}), fourier::ConfigError);
    CHECK_THROWS_AS(fourier::sweep(config, {16, 16}), fourier::ConfigError);
}

TEST_CASE("a missing reference is filled by a Monte Carlo pre-run") {
    ExperimentConfig config = put_1d(Method::TP);
    config.reference.reset();
    config.mc_samples = 200000;
    config.seed = 5;
    const auto reports = fourier::sweep(config, {64});
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].relative_error.has_value());
    // the pre-run reference is statistically close to the true value, so the
    // converged quadrature row shows only the Monte Carlo noise
    CHECK(*reports[0].relative_error < 0.01);
}

TEST_CASE("Laguerre dominates Hermite on the one-dimensional put") {
    // raw rules, no axis scaling: the comparison that motivates the
    // Laguerre default
    ExperimentConfig laguerre = put_1d(Method::TP);
    laguerre.rule = fourier::RuleKind::Laguerre;
    laguerre.scaled = false;
    ExperimentConfig hermite = put_1d(Method::TP);
    hermite.rule = fourier::RuleKind::Hermite;
    hermite.scaled = false;
    const std::vector<long long> budgets = {16, 32, 64};
    const auto lag = fourier::sweep(laguerre, budgets);
    const auto her = fourier::sweep(hermite, budgets);
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        CAPTURE(budgets[i]);
        CHECK(*lag[i].relative_error < *her[i].relative_error);
    }
}

TEST_CASE("ASGQ sweeps respect their budgets") {
    ExperimentConfig config =
        ExperimentConfig::from_registry(fourier::example(6), Method::ASGQ);
    config.scaled = false;
    const auto reports = fourier::sweep(config, {512, 1024, 3072});
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        CHECK(r.n_eval <= 3072);
        CHECK_FALSE(r.index_set.empty());
    }
    CHECK(reports[0].n_eval <= 512);
    CHECK(reports[1].n_eval <= 1024);
    CHECK(*reports[2].relative_error < 0.01);
}

TEST_CASE("experiment configs round-trip through JSON") {
    ExperimentConfig config =
        ExperimentConfig::from_registry(fourier::example(13), Method::SM);
    config.level = 4;
    config.damping_mode = DampingMode::OptimalOffset;
    config.damping_offset = {0.1, -0.1};
    config.seed = 77;
    const nlohmann::json j = config.to_json();
    const ExperimentConfig back = ExperimentConfig::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.method == Method::SM);
    CHECK(back.level == 4);
    CHECK(back.damping_mode == DampingMode::OptimalOffset);
    CHECK(back.seed == 77);
    REQUIRE(back.reference.has_value());
    CHECK(*back.reference == doctest::Approx(11.7589));
}

TEST_CASE("configs load from a registry id with overrides") {
    const nlohmann::json j = {{"example", 6},
                              {"method", "ASGQ"},
                              {"quadrature", {{"scaled", false}, {"budget", 3072}}}};
    const ExperimentConfig config = ExperimentConfig::from_json(j);
    CHECK(config.method == Method::ASGQ);
    CHECK_FALSE(config.scaled);
    CHECK(config.budget == 3072);
    CHECK(config.model.dim() == 4);
    REQUIRE(config.reference.has_value());
    CHECK(*config.reference == doctest::Approx(11.3014));
}

TEST_CASE("method and damping-mode names round-trip") {
    for (Method m : {Method::TP, Method::SM, Method::ASGQ, Method::MC, Method::COS2D}) {
        CHECK(fourier::method_from_string(fourier::to_string(m)) == m);
    }
    for (DampingMode m :
         {DampingMode::Optimal, DampingMode::Fixed, DampingMode::OptimalOffset}) {
        CHECK(fourier::damping_mode_from_string(fourier::to_string(m)) == m);
    }
    CHECK_THROWS_AS(fourier::method_from_string("XX"), fourier::ConfigError);
}

TEST_CASE("Smolyak method runs through the runner") {
    ExperimentConfig config =
        ExperimentConfig::from_registry(fourier::example(1), Method::SM);
    config.level = 5;
    const PriceReport report = fourier::run(config);
    REQUIRE(report.relative_error.has_value());
    CHECK(*report.relative_error < 0.005);
    CHECK(report.n_eval > 0);
    CHECK(report.n > 0);
}
