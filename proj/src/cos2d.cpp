#include "fourier/cos2d.hpp"
#include "fourier/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace fourier {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_config(const ModelSpec& model, const CosConfig& config) {
    if (model.dim() < 1 || model.dim() > 2)
        throw ConfigError("cos2d_price: only one- and two-dimensional models are supported");
    if (config.n_cos < 1) throw ConfigError("cos2d_price: n_cos must be positive");
    if (config.q < config.n_cos)
        throw ConfigError("cos2d_price: q must be at least n_cos");
    if (!(config.truncation_width > 0.0))
        throw ConfigError("cos2d_price: truncation width must be positive");
}

using Grid = Eigen::MatrixXd;
using CGrid = Eigen::MatrixXcd;

CosResult price_1d(const ModelSpec& model,
                   const std::function<double(const Vec&)>& payoff,
                   const CosConfig& config) {
    const int n = config.n_cos;
    const int q = config.q;
    const CosRange range = truncation_range(model, config);
    const double width = range.b - range.a;

    Eigen::VectorXd pay(q);
    Vec x(1);
    for (int j = 0; j < q; ++j) {
        x[0] = range.a + (j + 0.5) * width / q;
        pay[j] = payoff(x);
    }

    Grid dct(n, q);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < q; ++j) dct(k, j) = std::cos(kPi * k * (j + 0.5) / q);

    const Eigen::VectorXd coeff = (2.0 / q) * (dct * pay);

    CVec z(1);
    long double acc = 0.0L;
    for (int k = 0; k < n; ++k) {
        const double w = k * kPi / width;
        z[0] = Complex(w, 0.0);
        const Complex phase = std::exp(Complex(0.0, -w * range.a));
        const double density = (2.0 / width) * (model.chf(z) * phase).real();
        acc += (k == 0 ? 0.5L : 1.0L) * static_cast<long double>(density * coeff[k]);
    }

    CosResult r;
    r.value = std::exp(-model.rate() * model.maturity()) *
              (width / 2.0) * static_cast<double>(acc);
    r.n_cf = n;
    return r;
}

CosResult price_2d(const ModelSpec& model,
                   const std::function<double(const Vec&)>& payoff,
                   const CosConfig& config) {
    const int n = config.n_cos;
    const int q = config.q;
    const CosRange range = truncation_range(model, config);
    const double width = range.b - range.a;

    Grid pay(q, q);
    Vec x(2);
    for (int i = 0; i < q; ++i) {
        x[0] = range.a + (i + 0.5) * width / q;
        for (int j = 0; j < q; ++j) {
            x[1] = range.a + (j + 0.5) * width / q;
            pay(i, j) = payoff(x);
        }
    }

    Grid dct(n, q);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < q; ++j) dct(k, j) = std::cos(kPi * k * (j + 0.5) / q);

    const double dy = width / q;
    const Grid pay_coeff =
        (2.0 / width) * (2.0 / width) * dy * dy * (dct * pay * dct.transpose());

    Eigen::VectorXcd phase(n);
    Vec w(n);
    for (int k = 0; k < n; ++k) {
        w[k] = k * kPi / width;
        phase[k] = std::exp(Complex(0.0, -w[k] * range.a));
    }

    CVec z(2);
    Grid density(n, n);
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            z[0] = Complex(w[k1], 0.0);
            z[1] = Complex(w[k2], 0.0);
            const Complex plus = model.chf(z) * phase[k1] * phase[k2];
            z[1] = Complex(-w[k2], 0.0);
            const Complex minus = model.chf(z) * phase[k1] * std::conj(phase[k2]);
            density(k1, k2) =
                0.5 * (2.0 / width) * (2.0 / width) * (plus.real() + minus.real());
        }
    }

    long double acc = 0.0L;
    for (int k1 = 0; k1 < n; ++k1) {
        const long double w1 = k1 == 0 ? 0.5L : 1.0L;
        for (int k2 = 0; k2 < n; ++k2) {
            const long double w2 = k2 == 0 ? 0.5L : 1.0L;
            acc += w1 * w2 *
                   static_cast<long double>(density(k1, k2) * pay_coeff(k1, k2));
        }
    }

    CosResult r;
    r.value = std::exp(-model.rate() * model.maturity()) *
              (width * width / 4.0) * static_cast<double>(acc);
    r.n_cf = 2LL * n * n;
    return r;
}

} // namespace

CosRange truncation_range(const ModelSpec& model, const CosConfig& config) {
    if (model.dim() < 1 || model.dim() > 2)
        throw ConfigError("truncation_range: only one- and two-dimensional models are supported");
    if (!(config.truncation_width > 0.0))
        throw ConfigError("truncation_range: truncation width must be positive");

    CosRange range;
    bool first = true;
    for (int i = 0; i < model.dim(); ++i) {
        const CumulantSet c = model.marginal_cumulants(i);
        const double half = config.truncation_width * std::sqrt(c.c2 + std::sqrt(c.c4));
        const double lo = c.c1 - half;
        const double hi = c.c1 + half;
        if (first) {
            range.a = lo;
            range.b = hi;
            first = false;
        } else {
            range.a = std::min(range.a, lo);
            range.b = std::max(range.b, hi);
        }
    }
    return range;
}

CosResult cos2d_price(const ModelSpec& model,
                      const std::function<double(const Vec&)>& payoff,
                      const CosConfig& config) {
    check_config(model, config);
    return model.dim() == 1 ? price_1d(model, payoff, config)
                            : price_2d(model, payoff, config);
}

CosResult cos2d_price(const ModelSpec& model, const PayoffSpec& payoff,
                      const CosConfig& config) {
    if (model.dim() != payoff.dim())
        throw ConfigError("cos2d_price: model and payoff dimensions differ");
    return cos2d_price(
        model, [&payoff](const Vec& x) { return payoff.payoff(x); }, config);
}

} // namespace fourier
