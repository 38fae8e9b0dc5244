#pragma once

#include "fourier/types.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace fourier {

enum class ModelFamily { GBM, VG, NIG };

std::string to_string(ModelFamily f);
ModelFamily model_family_from_string(const std::string& s);

struct StripCheck {
    bool inside = false;
    double margin = 0.0; // constraint value; +inf when the strip is all of R^d
};

struct CumulantSet {
    double c1 = 0.0;
    double c2 = 0.0;
    double c4 = 0.0;
};

// Market and model parameters for the terminal log-price vector X_T.
// Immutable after construction; all member functions are pure.
class ModelSpec {
public:
    static ModelSpec gbm(Vec spot, double rate, double maturity, Vec sigma, Matrix corr);
    static ModelSpec gbm(Vec spot, double rate, double maturity, Vec sigma); // identity correlation
    static ModelSpec vg(Vec spot, double rate, double maturity, Vec sigma, Vec theta, double nu);
    static ModelSpec nig(Vec spot, double rate, double maturity, double alpha, Vec beta,
                         double delta, Matrix mixing);
    static ModelSpec nig(Vec spot, double rate, double maturity, double alpha, Vec beta,
                         double delta); // identity mixing matrix

    ModelFamily family() const { return family_; }
    int dim() const { return d_; }
    const Vec& spot() const { return spot_; }
    double rate() const { return rate_; }
    double maturity() const { return maturity_; }
    const Vec& x0() const { return x0_; }

    const Vec& sigma() const { return sigma_; }
    const Matrix& corr() const { return corr_; }
    const Matrix& covariance() const { return Sigma_; }
    const Vec& theta() const { return theta_; }
    double nu() const { return nu_; }
    double alpha() const { return alpha_; }
    const Vec& beta() const { return beta_; }
    double delta() const { return delta_; }
    const Matrix& mixing() const { return mixing_; }

    // Drift adjustment used inside the chf so that E[S_T^i] = S0_i e^{rT}.
    Vec martingale_correction() const;

    // chf of X_T at complex argument z, including the exp(i<z, X0>) factor.
    Complex chf(const CVec& z) const;

    // Factorized form without the spot factor, for reuse under shifted log-spots.
    Complex chf_factor(const CVec& z) const;

    // log chf_factor(iR) for real R inside the strip; real-valued, stays in
    // log space so the damping optimizer never over/underflows.
    double log_chf_factor_at_imag(const Vec& R) const;

    StripCheck strip_contains_X(const Vec& R) const;

    // Cumulants c1, c2, c4 of the i-th marginal of X_T (c1 includes X0_i),
    // by central finite differences of the marginal log-chf.
    CumulantSet marginal_cumulants(int i) const;

    // Symmetric factor A with A A^T = covariance (GBM sampling support).
    const Matrix& covariance_factor() const;

    nlohmann::json to_json() const;
    static ModelSpec from_json(const nlohmann::json& j);

private:
    ModelSpec() = default;
    void finalize(); // derive Sigma/x0/mu and validate invariants

    ModelFamily family_ = ModelFamily::GBM;
    int d_ = 0;
    Vec spot_;
    double rate_ = 0.0;
    double maturity_ = 0.0;
    Vec sigma_;
    Matrix corr_;
    Vec theta_;
    double nu_ = 0.0;
    double alpha_ = 0.0;
    Vec beta_;
    double delta_ = 0.0;
    Matrix mixing_;

    Vec x0_;
    Matrix Sigma_;       // GBM: corr scaled by sigma; VG: diagonal sigma^2
    Matrix cov_factor_;  // GBM only
    Vec mu_;             // martingale correction, empty if parameters inadmissible
    std::string mu_error_;
    double gamma0_ = 0.0; // NIG: sqrt(alpha^2 - beta' Delta beta)
};

} // namespace fourier
