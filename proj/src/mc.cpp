#include "fourier/mc.hpp"
#include "fourier/errors.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace fourier {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvTwo53 = 1.0 / 9007199254740992.0;

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint64_t stream)
    : key_{seed, stream} {}

void PhiloxStream::refill() {
    // the counter advances before each block, matching the convention used by
    // the reference implementation the known-answer vectors were frozen from
    if (++counter_[0] == 0)
        if (++counter_[1] == 0)
            if (++counter_[2] == 0) ++counter_[3];
    std::uint64_t c0 = counter_[0], c1 = counter_[1];
    std::uint64_t c2 = counter_[2], c3 = counter_[3];
    std::uint64_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMult0, c0, hi0, lo0);
        mulhilo(kMult1, c2, hi1, lo1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    buffer_ = {c0, c1, c2, c3};
    pos_ = 0;
}

std::uint64_t PhiloxStream::next_u64() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
}

double PhiloxStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * kInvTwo53;
}

double PhiloxStream::next_uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * kInvTwo53;
}

double PhiloxStream::next_normal() {
    if (has_normal_) {
        has_normal_ = false;
        return cached_normal_;
    }
    const double u1 = next_uniform_pos();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_normal_ = true;
    return radius * std::cos(angle);
}

double PhiloxStream::next_gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw ConfigError("next_gamma: shape and scale must be positive");
    if (shape < 1.0) {
        const double u = next_uniform_pos();
        return next_gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_uniform_pos();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double PhiloxStream::next_inverse_gaussian(double mean, double shape) {
    if (!(mean > 0.0) || !(shape > 0.0))
        throw ConfigError("next_inverse_gaussian: mean and shape must be positive");
    const double z = next_normal();
    const double y = z * z;
    double x = mean + mean * mean * y / (2.0 * shape) -
               (mean / (2.0 * shape)) *
                   std::sqrt(4.0 * shape * mean * y + mean * mean * y * y);
    x = std::max(x, std::numeric_limits<double>::min());
    const double u = next_uniform();
    if (u <= mean / (mean + x)) return x;
    return mean * mean / x;
}

TerminalSampler::TerminalSampler(const ModelSpec& model)
    : family_(model.family()), d_(model.dim()), x0_(model.x0()) {
    const double T = model.maturity();
    const Vec mu = model.martingale_correction();
    drift_.resize(d_);
    for (int i = 0; i < d_; ++i) drift_[i] = (model.rate() + mu[i]) * T;

    switch (family_) {
        case ModelFamily::GBM: {
            const Matrix& factor = model.covariance_factor();
            diffusion_.assign(d_, Vec(d_, 0.0));
            const double rootT = std::sqrt(T);
            for (int i = 0; i < d_; ++i)
                for (int j = 0; j < d_; ++j) diffusion_[i][j] = rootT * factor[i][j];
            break;
        }
        case ModelFamily::VG:
            sigma_ = model.sigma();
            theta_ = model.theta();
            gamma_shape_ = T / model.nu();
            gamma_scale_ = model.nu();
            break;
        case ModelFamily::NIG: {
            const Matrix& mixing = model.mixing();
            for (int i = 0; i < d_; ++i)
                for (int j = 0; j < d_; ++j)
                    if (mixing[i][j] != (i == j ? 1.0 : 0.0))
                        throw ConfigError(
                            "TerminalSampler: NIG sampling supports the identity mixing matrix only");
            beta_ = model.beta();
            double bb = 0.0;
            for (int i = 0; i < d_; ++i) bb += beta_[i] * beta_[i];
            const double gamma0 = std::sqrt(model.alpha() * model.alpha() - bb);
            ig_mean_ = model.delta() * T / gamma0;
            ig_shape_ = model.delta() * T * model.delta() * T;
            break;
        }
    }
}

void TerminalSampler::sample(PhiloxStream& rng, Vec& x) const {
    x.resize(d_);
    thread_local Vec z;
    z.resize(d_);

    switch (family_) {
        case ModelFamily::GBM: {
            for (int i = 0; i < d_; ++i) z[i] = rng.next_normal();
            for (int i = 0; i < d_; ++i) {
                double diff = 0.0;
                for (int j = 0; j < d_; ++j) diff += diffusion_[i][j] * z[j];
                x[i] = x0_[i] + drift_[i] + diff;
            }
            break;
        }
        case ModelFamily::VG: {
            const double g = rng.next_gamma(gamma_shape_, gamma_scale_);
            const double rootG = std::sqrt(g);
            for (int i = 0; i < d_; ++i)
                x[i] = x0_[i] + drift_[i] + theta_[i] * g +
                       sigma_[i] * rootG * rng.next_normal();
            break;
        }
        case ModelFamily::NIG: {
            const double g = rng.next_inverse_gaussian(ig_mean_, ig_shape_);
            const double rootG = std::sqrt(g);
            for (int i = 0; i < d_; ++i)
                x[i] = x0_[i] + drift_[i] + beta_[i] * g + rootG * rng.next_normal();
            break;
        }
    }
}

Vec sample_terminal(const ModelSpec& model, PhiloxStream& rng) {
    TerminalSampler sampler(model);
    Vec x;
    sampler.sample(rng, x);
    return x;
}

nlohmann::json to_json(const MCResult& r) {
    return nlohmann::json{{"estimate", r.estimate},
                          {"std_dev", r.std_dev},
                          {"M", r.m},
                          {"rel_stat_error", r.rel_stat_error},
                          {"seed", r.seed}};
}

namespace {

struct Accumulator {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;
};

} // namespace

MCResult mc_price(const ModelSpec& model, const PayoffSpec& payoff, long long m,
                  std::uint64_t seed, int threads) {
    if (m < 2) throw ConfigError("mc_price: need at least two samples");
    if (model.dim() != payoff.dim())
        throw ConfigError("mc_price: model and payoff dimensions differ");

    const TerminalSampler sampler(model);
    const double discount = std::exp(-model.rate() * model.maturity());

    constexpr long long kBatchSize = 1 << 16;
    const long long n_batches = (m + kBatchSize - 1) / kBatchSize;
    std::vector<Accumulator> batches(n_batches);

    auto run_batch = [&](long long b) {
        PhiloxStream rng(seed, static_cast<std::uint64_t>(b));
        const long long n = std::min(kBatchSize, m - b * kBatchSize);
        Accumulator acc;
        Vec x(model.dim());
        for (long long k = 0; k < n; ++k) {
            sampler.sample(rng, x);
            const double v = discount * payoff.payoff(x);
            ++acc.n;
            const double delta = v - acc.mean;
            acc.mean += delta / static_cast<double>(acc.n);
            acc.m2 += delta * (v - acc.mean);
        }
        batches[b] = acc;
    };

    int n_threads = threads > 0
                        ? threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1LL, std::min<long long>(n_threads, n_batches));

    if (n_threads == 1) {
        for (long long b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::atomic<long long> next{0};
        auto worker = [&] {
            for (;;) {
                const long long b = next.fetch_add(1);
                if (b >= n_batches) return;
                run_batch(b);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(n_threads - 1);
        for (int t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    // order-fixed pairwise merge keeps the reduction deterministic
    Accumulator total;
    for (const Accumulator& acc : batches) {
        if (acc.n == 0) continue;
        if (total.n == 0) {
            total = acc;
            continue;
        }
        const long long n = total.n + acc.n;
        const double delta = acc.mean - total.mean;
        total.m2 += acc.m2 + delta * delta *
                                 (static_cast<double>(total.n) *
                                  static_cast<double>(acc.n) / static_cast<double>(n));
        total.mean += delta * static_cast<double>(acc.n) / static_cast<double>(n);
        total.n = n;
    }

    MCResult result;
    result.estimate = total.mean;
    result.std_dev = std::sqrt(total.m2 / static_cast<double>(total.n - 1));
    result.m = total.n;
    result.seed = seed;
    result.rel_stat_error =
        result.estimate != 0.0
            ? 1.96 * result.std_dev /
                  (std::abs(result.estimate) * std::sqrt(static_cast<double>(total.n)))
            : std::numeric_limits<double>::infinity();
    return result;
}

} // namespace fourier
