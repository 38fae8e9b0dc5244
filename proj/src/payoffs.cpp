#include "fourier/payoffs.hpp"
#include "fourier/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace fourier {

std::string to_string(PayoffFamily f) {
    switch (f) {
        case PayoffFamily::BasketPut: return "basket_put";
        case PayoffFamily::CallOnMin: return "call_on_min";
    }
    throw ConfigError("unknown payoff family");
}

PayoffFamily payoff_family_from_string(const std::string& s) {
    if (s == "basket_put") return PayoffFamily::BasketPut;
    if (s == "call_on_min") return PayoffFamily::CallOnMin;
    throw ConfigError("unknown payoff family '" + s + "'");
}

PayoffSpec PayoffSpec::basket_put(double strike, Vec weights, double log_exponent_cap) {
    PayoffSpec p;
    p.family_ = PayoffFamily::BasketPut;
    p.strike_ = strike;
    p.weights_ = std::move(weights);
    p.d_ = static_cast<int>(p.weights_.size());
    p.log_cap_ = log_exponent_cap;
    if (!(strike > 0.0)) throw DomainError("payoff: strike must be positive");
    if (p.d_ < 1) throw DomainError("payoff: dimension must be at least 1");
    for (double w : p.weights_)
        if (!(w > 0.0)) throw DomainError("payoff: basket weights must be positive");
    return p;
}

PayoffSpec PayoffSpec::basket_put_equal(double strike, int d, double log_exponent_cap) {
    if (d < 1) throw DomainError("payoff: dimension must be at least 1");
    return basket_put(strike, Vec(d, 1.0 / d), log_exponent_cap);
}

PayoffSpec PayoffSpec::call_on_min(double strike, int d, double log_exponent_cap) {
    PayoffSpec p;
    p.family_ = PayoffFamily::CallOnMin;
    p.strike_ = strike;
    p.weights_ = Vec(static_cast<size_t>(std::max(d, 0)), 1.0);
    p.d_ = d;
    p.log_cap_ = log_exponent_cap;
    if (!(strike > 0.0)) throw DomainError("payoff: strike must be positive");
    if (d < 1) throw DomainError("payoff: dimension must be at least 1");
    return p;
}

double PayoffSpec::payoff(const Vec& x) const {
    if (static_cast<int>(x.size()) != d_) throw DomainError("payoff: wrong dimension");
    if (family_ == PayoffFamily::BasketPut) {
        double basket = 0.0;
        for (int i = 0; i < d_; ++i) basket += weights_[i] * std::exp(x[i]);
        return std::max(strike_ - basket, 0.0);
    }
    double mn = std::exp(x[0]);
    for (int i = 1; i < d_; ++i) mn = std::min(mn, std::exp(x[i]));
    return std::max(mn - strike_, 0.0);
}

PayoffStripCheck PayoffSpec::strip_contains_P(const Vec& R) const {
    if (static_cast<int>(R.size()) != d_)
        throw DomainError("strip_contains_P: wrong dimension");
    PayoffStripCheck sc;
    if (family_ == PayoffFamily::BasketPut) {
        sc.margins = R; // need R_i > 0
    } else {
        // need R_i < 0 for every i and sum R_i < -1
        double sum = 0.0;
        for (double r : R) {
            sc.margins.push_back(-r);
            sum += r;
        }
        sc.margins.push_back(-sum - 1.0);
    }
    sc.inside = std::all_of(sc.margins.begin(), sc.margins.end(),
                            [](double m) { return m > 0.0; });
    return sc;
}

Complex PayoffSpec::payoff_hat(const CVec& z) const {
    if (static_cast<int>(z.size()) != d_) throw DomainError("payoff_hat: wrong dimension");
    Vec R(d_);
    for (int i = 0; i < d_; ++i) R[i] = z[i].imag();
    const PayoffStripCheck sc = strip_contains_P(R);
    if (!sc.inside)
        throw StripViolation("payoff_hat: Im(z) outside the strip of regularity");

    const Complex I(0.0, 1.0);
    Complex zsum(0.0, 0.0);
    for (const Complex& zi : z) zsum += zi;

    Complex lhat = (1.0 - I * zsum) * std::log(strike_);
    if (family_ == PayoffFamily::BasketPut) {
        for (const Complex& zi : z) lhat += log_gamma(-I * zi);
        lhat -= log_gamma(-I * zsum + 2.0);
    } else {
        lhat -= std::log(I * zsum - 1.0);
        for (const Complex& zi : z) lhat -= std::log(I * zi);
    }
    if (lhat.real() > log_cap_)
        throw OverflowError("payoff_hat: log-space exponent " +
                            std::to_string(lhat.real()) + " exceeds cap");
    return std::exp(lhat);
}

double PayoffSpec::log_hat_at_imag(const Vec& R) const {
    const PayoffStripCheck sc = strip_contains_P(R);
    if (!sc.inside)
        throw StripViolation("log_hat_at_imag: R outside the strip of regularity");
    double rsum = 0.0;
    for (double r : R) rsum += r;
    double lhat = (1.0 + rsum) * std::log(strike_);
    if (family_ == PayoffFamily::BasketPut) {
        for (double r : R) lhat += std::lgamma(r);
        lhat -= std::lgamma(rsum + 2.0);
    } else {
        lhat -= std::log(-rsum - 1.0);
        for (double r : R) lhat -= std::log(-r);
    }
    return lhat;
}

nlohmann::json PayoffSpec::to_json() const {
    nlohmann::json j;
    j["family"] = to_string(family_);
    j["strike"] = strike_;
    j["weights"] = weights_;
    return j;
}

PayoffSpec PayoffSpec::from_json(const nlohmann::json& j) {
    const PayoffFamily fam = payoff_family_from_string(j.at("family").get<std::string>());
    const double strike = j.at("strike").get<double>();
    const Vec weights = j.at("weights").get<Vec>();
    if (fam == PayoffFamily::BasketPut) return basket_put(strike, weights);
    return call_on_min(strike, static_cast<int>(weights.size()));
}

} // namespace fourier
