#pragma once

#include "fourier/log_gamma.hpp"
#include "fourier/types.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace fourier {

enum class PayoffFamily { BasketPut, CallOnMin };

std::string to_string(PayoffFamily f);
PayoffFamily payoff_family_from_string(const std::string& s);

struct PayoffStripCheck {
    bool inside = false;
    Vec margins; // all must be strictly positive for membership
};

// European payoff on the terminal log-price vector, with its generalized
// Fourier transform. Immutable; all member functions are pure.
class PayoffSpec {
public:
    static PayoffSpec basket_put(double strike, Vec weights, double log_exponent_cap = 700.0);
    static PayoffSpec basket_put_equal(double strike, int d, double log_exponent_cap = 700.0);
    static PayoffSpec call_on_min(double strike, int d, double log_exponent_cap = 700.0);

    PayoffFamily family() const { return family_; }
    double strike() const { return strike_; }
    const Vec& weights() const { return weights_; }
    int dim() const { return d_; }
    double log_exponent_cap() const { return log_cap_; }

    // physical payoff at log-prices x
    double payoff(const Vec& x) const;

    // generalized Fourier transform at complex argument z; all Gamma factors
    // are combined in log space before the single exponentiation
    Complex payoff_hat(const CVec& z) const;

    // log payoff_hat(iR) for real R inside the strip; real-valued
    double log_hat_at_imag(const Vec& R) const;

    PayoffStripCheck strip_contains_P(const Vec& R) const;

    nlohmann::json to_json() const;
    static PayoffSpec from_json(const nlohmann::json& j);

private:
    PayoffSpec() = default;

    PayoffFamily family_ = PayoffFamily::BasketPut;
    double strike_ = 0.0;
    Vec weights_;
    int d_ = 0;
    double log_cap_ = 700.0;
};

} // namespace fourier
