#pragma once

#include "fourier/models.hpp"
#include "fourier/payoffs.hpp"
#include "fourier/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <cstdint>

namespace fourier {

// Philox4x64-10 counter-based generator. Streams with distinct (seed, stream)
// keys are independent, and each stream's output is a pure function of its
// key, so parallel batches reproduce exactly regardless of scheduling.
class PhiloxStream {
public:
    explicit PhiloxStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double next_uniform();     // [0, 1)
    double next_uniform_pos(); // (0, 1]
    double next_normal();
    double next_gamma(double shape, double scale);
    double next_inverse_gaussian(double mean, double shape);

private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_{};
    std::array<std::uint64_t, 4> buffer_{};
    int pos_ = 4;
    bool has_normal_ = false;
    double cached_normal_ = 0.0;
};

// Draws terminal log-price vectors X_T for one model. GBM uses a correlated
// Gaussian; VG and NIG share one subordinator across assets, matching the
// common-clock structure of the multivariate models.
class TerminalSampler {
public:
    explicit TerminalSampler(const ModelSpec& model);

    int dim() const { return d_; }
    void sample(PhiloxStream& rng, Vec& x) const;

private:
    ModelFamily family_;
    int d_ = 0;
    Vec x0_;
    Vec drift_;       // (r + mu_i) T
    Matrix diffusion_; // GBM: sqrt(T) * covariance factor
    Vec sigma_;
    Vec theta_;
    Vec beta_;
    double gamma_shape_ = 0.0;
    double gamma_scale_ = 0.0;
    double ig_mean_ = 0.0;
    double ig_shape_ = 0.0;
};

Vec sample_terminal(const ModelSpec& model, PhiloxStream& rng);

struct MCResult {
    double estimate = 0.0;
    double std_dev = 0.0; // per-sample standard deviation of the discounted payoff
    long long m = 0;
    double rel_stat_error = 0.0; // 1.96 sigma / (|estimate| sqrt(M))
    std::uint64_t seed = 0;
};

nlohmann::json to_json(const MCResult& r);

// Discounted sample-mean price with a single-pass variance estimate.
// Batches run on per-batch Philox streams and reduce in fixed order, so the
// result is bit-identical for any thread count. threads = 0 picks the
// hardware concurrency.
MCResult mc_price(const ModelSpec& model, const PayoffSpec& payoff, long long m,
                  std::uint64_t seed, int threads = 0);

} // namespace fourier
