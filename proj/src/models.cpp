#include "fourier/models.hpp"
#include "fourier/errors.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>

namespace fourier {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd to_eigen(const Matrix& m) {
    const int n = static_cast<int>(m.size());
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = m[i][j];
    return out;
}

// complex bilinear form <a, M b> (no conjugation)
Complex bilinear(const Matrix& M, const CVec& a, const CVec& b) {
    Complex s(0.0, 0.0);
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        Complex row(0.0, 0.0);
        for (int j = 0; j < n; ++j) row += M[i][j] * b[j];
        s += a[i] * row;
    }
    return s;
}

double bilinear_real(const Matrix& M, const Vec& a, const Vec& b) {
    double s = 0.0;
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += M[i][j] * b[j];
        s += a[i] * row;
    }
    return s;
}

void check_square(const Matrix& m, int d, const char* name) {
    if (static_cast<int>(m.size()) != d)
        throw DomainError(std::string(name) + ": expected " + std::to_string(d) + " rows");
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != d)
            throw DomainError(std::string(name) + ": matrix is not square");
}

} // namespace

std::string to_string(ModelFamily f) {
    switch (f) {
        case ModelFamily::GBM: return "gbm";
        case ModelFamily::VG: return "vg";
        case ModelFamily::NIG: return "nig";
    }
    throw ConfigError("unknown model family");
}

ModelFamily model_family_from_string(const std::string& s) {
    if (s == "gbm") return ModelFamily::GBM;
    if (s == "vg") return ModelFamily::VG;
    if (s == "nig") return ModelFamily::NIG;
    throw ConfigError("unknown model family '" + s + "'");
}

ModelSpec ModelSpec::gbm(Vec spot, double rate, double maturity, Vec sigma, Matrix corr) {
    ModelSpec m;
    m.family_ = ModelFamily::GBM;
    m.d_ = static_cast<int>(spot.size());
    m.spot_ = std::move(spot);
    m.rate_ = rate;
    m.maturity_ = maturity;
    m.sigma_ = std::move(sigma);
    m.corr_ = std::move(corr);
    m.finalize();
    return m;
}

ModelSpec ModelSpec::gbm(Vec spot, double rate, double maturity, Vec sigma) {
    const int d = static_cast<int>(spot.size());
    return gbm(std::move(spot), rate, maturity, std::move(sigma), identity_matrix(d));
}

ModelSpec ModelSpec::vg(Vec spot, double rate, double maturity, Vec sigma, Vec theta, double nu) {
    ModelSpec m;
    m.family_ = ModelFamily::VG;
    m.d_ = static_cast<int>(spot.size());
    m.spot_ = std::move(spot);
    m.rate_ = rate;
    m.maturity_ = maturity;
    m.sigma_ = std::move(sigma);
    m.theta_ = std::move(theta);
    m.nu_ = nu;
    m.finalize();
    return m;
}

ModelSpec ModelSpec::nig(Vec spot, double rate, double maturity, double alpha, Vec beta,
                         double delta, Matrix mixing) {
    ModelSpec m;
    m.family_ = ModelFamily::NIG;
    m.d_ = static_cast<int>(spot.size());
    m.spot_ = std::move(spot);
    m.rate_ = rate;
    m.maturity_ = maturity;
    m.alpha_ = alpha;
    m.beta_ = std::move(beta);
    m.delta_ = delta;
    m.mixing_ = std::move(mixing);
    m.finalize();
    return m;
}

ModelSpec ModelSpec::nig(Vec spot, double rate, double maturity, double alpha, Vec beta,
                         double delta) {
    const int d = static_cast<int>(spot.size());
    return nig(std::move(spot), rate, maturity, alpha, std::move(beta), delta,
               identity_matrix(d));
}

void ModelSpec::finalize() {
    if (d_ < 1) throw DomainError("model: dimension must be at least 1");
    if (static_cast<int>(spot_.size()) != d_)
        throw DomainError("model: spot vector has wrong length");
    for (double s : spot_)
        if (!(s > 0.0)) throw DomainError("model: spot prices must be positive");
    if (!(maturity_ > 0.0)) throw DomainError("model: maturity must be positive");
    if (!std::isfinite(rate_)) throw DomainError("model: rate must be finite");

    x0_.resize(d_);
    for (int i = 0; i < d_; ++i) x0_[i] = std::log(spot_[i]);

    switch (family_) {
        case ModelFamily::GBM: {
            if (static_cast<int>(sigma_.size()) != d_)
                throw DomainError("gbm: sigma vector has wrong length");
            for (double s : sigma_)
                if (!(s > 0.0)) throw DomainError("gbm: sigma entries must be positive");
            check_square(corr_, d_, "gbm correlation");
            for (int i = 0; i < d_; ++i) {
                if (std::abs(corr_[i][i] - 1.0) > 1e-12)
                    throw DomainError("gbm: correlation diagonal must be 1");
                for (int j = 0; j < d_; ++j)
                    if (std::abs(corr_[i][j] - corr_[j][i]) > 1e-12)
                        throw DomainError("gbm: correlation must be symmetric");
            }
            Sigma_.assign(d_, Vec(d_, 0.0));
            for (int i = 0; i < d_; ++i)
                for (int j = 0; j < d_; ++j)
                    Sigma_[i][j] = corr_[i][j] * sigma_[i] * sigma_[j];

            // positive semidefiniteness via symmetric eigenfactorization; the
            // factor doubles as the sampling transform
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(Sigma_));
            if (es.info() != Eigen::Success)
                throw NumericalError("gbm: covariance eigensolve failed");
            const double max_eig = es.eigenvalues().maxCoeff();
            if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, max_eig))
                throw DomainError("gbm: correlation matrix is not positive semidefinite");
            Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
            Eigen::MatrixXd A = es.eigenvectors() * lam.asDiagonal();
            cov_factor_.assign(d_, Vec(d_, 0.0));
            for (int i = 0; i < d_; ++i)
                for (int j = 0; j < d_; ++j) cov_factor_[i][j] = A(i, j);

            mu_.resize(d_);
            for (int i = 0; i < d_; ++i) mu_[i] = -0.5 * Sigma_[i][i];
            break;
        }
        case ModelFamily::VG: {
            if (static_cast<int>(sigma_.size()) != d_)
                throw DomainError("vg: sigma vector has wrong length");
            if (static_cast<int>(theta_.size()) != d_)
                throw DomainError("vg: theta vector has wrong length");
            for (double s : sigma_)
                if (!(s > 0.0)) throw DomainError("vg: sigma entries must be positive");
            if (!(nu_ > 0.0)) throw DomainError("vg: nu must be positive");
            Sigma_.assign(d_, Vec(d_, 0.0));
            for (int i = 0; i < d_; ++i) Sigma_[i][i] = sigma_[i] * sigma_[i];

            mu_.resize(d_);
            for (int i = 0; i < d_; ++i) {
                const double arg = 1.0 - 0.5 * sigma_[i] * sigma_[i] * nu_ - theta_[i] * nu_;
                if (!(arg > 0.0)) {
                    mu_.clear();
                    mu_error_ = "vg: martingale correction undefined, "
                                "1 - sigma_i^2 nu/2 - theta_i nu must be positive";
                    break;
                }
                mu_[i] = std::log(arg) / nu_;
            }
            break;
        }
        case ModelFamily::NIG: {
            if (static_cast<int>(beta_.size()) != d_)
                throw DomainError("nig: beta vector has wrong length");
            if (!(delta_ > 0.0)) throw DomainError("nig: delta must be positive");
            if (!(alpha_ > 0.0)) throw DomainError("nig: alpha must be positive");
            check_square(mixing_, d_, "nig mixing");
            for (int i = 0; i < d_; ++i)
                for (int j = 0; j < d_; ++j)
                    if (std::abs(mixing_[i][j] - mixing_[j][i]) > 1e-12)
                        throw DomainError("nig: mixing matrix must be symmetric");
            Eigen::MatrixXd D = to_eigen(mixing_);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
            if (es.info() != Eigen::Success)
                throw NumericalError("nig: mixing eigensolve failed");
            if (es.eigenvalues().minCoeff() <= 0.0)
                throw DomainError("nig: mixing matrix must be positive definite");
            if (std::abs(D.determinant() - 1.0) > 1e-8)
                throw DomainError("nig: mixing matrix must have unit determinant");

            const double q = bilinear_real(mixing_, beta_, beta_);
            if (!(alpha_ * alpha_ > q))
                throw DomainError("nig: alpha^2 must exceed beta' Delta beta");
            gamma0_ = std::sqrt(alpha_ * alpha_ - q);

            mu_.resize(d_);
            for (int i = 0; i < d_; ++i) {
                const double a2 = alpha_ * alpha_;
                const double b = beta_[i];
                if (a2 < b * b || a2 < (b + 1.0) * (b + 1.0)) {
                    mu_.clear();
                    mu_error_ = "nig: martingale correction undefined, "
                                "alpha^2 must dominate beta_i^2 and (beta_i+1)^2";
                    break;
                }
                mu_[i] = -delta_ * (std::sqrt(a2 - b * b) - std::sqrt(a2 - (b + 1.0) * (b + 1.0)));
            }
            break;
        }
    }
}

Vec ModelSpec::martingale_correction() const {
    if (mu_.empty()) throw DomainError(mu_error_);
    return mu_;
}

StripCheck ModelSpec::strip_contains_X(const Vec& R) const {
    if (static_cast<int>(R.size()) != d_)
        throw DomainError("strip_contains_X: wrong dimension");
    switch (family_) {
        case ModelFamily::GBM:
            return {true, kInf};
        case ModelFamily::VG: {
            double tr = 0.0;
            for (int i = 0; i < d_; ++i) tr += theta_[i] * R[i];
            const double m = 1.0 + nu_ * tr - 0.5 * nu_ * bilinear_real(Sigma_, R, R);
            return {m > 0.0, m};
        }
        case ModelFamily::NIG: {
            Vec w(d_);
            for (int i = 0; i < d_; ++i) w[i] = beta_[i] - R[i];
            const double m = alpha_ * alpha_ - bilinear_real(mixing_, w, w);
            return {m > 0.0, m};
        }
    }
    throw ConfigError("unknown model family");
}

Complex ModelSpec::chf_factor(const CVec& z) const {
    if (static_cast<int>(z.size()) != d_) throw DomainError("chf: wrong dimension");
    Vec R(d_);
    for (int i = 0; i < d_; ++i) R[i] = z[i].imag();
    const StripCheck sc = strip_contains_X(R);
    if (!sc.inside)
        throw StripViolation("chf: Im(z) outside the strip of analyticity, margin " +
                             std::to_string(sc.margin));
    if (mu_.empty()) throw DomainError(mu_error_);

    const Complex I(0.0, 1.0);
    Complex drift_dot(0.0, 0.0);
    for (int i = 0; i < d_; ++i) drift_dot += z[i] * (rate_ + mu_[i]);

    switch (family_) {
        case ModelFamily::GBM: {
            const Complex q = bilinear(Sigma_, z, z);
            return std::exp(I * drift_dot * maturity_ - 0.5 * maturity_ * q);
        }
        case ModelFamily::VG: {
            Complex tz(0.0, 0.0);
            for (int i = 0; i < d_; ++i) tz += theta_[i] * z[i];
            const Complex base = 1.0 - I * nu_ * tz + 0.5 * nu_ * bilinear(Sigma_, z, z);
            if (base == Complex(0.0, 0.0) ||
                (base.real() < 0.0 && std::abs(base.imag()) <= 1e-14 * std::abs(base.real())))
                throw BranchError("vg chf: base crossed the negative real axis");
            return std::exp(I * drift_dot * maturity_ - (maturity_ / nu_) * std::log(base));
        }
        case ModelFamily::NIG: {
            CVec w(d_);
            for (int i = 0; i < d_; ++i) w[i] = beta_[i] + I * z[i];
            const Complex rad = alpha_ * alpha_ - bilinear(mixing_, w, w);
            return std::exp(I * drift_dot * maturity_ +
                            delta_ * maturity_ * (gamma0_ - std::sqrt(rad)));
        }
    }
    throw ConfigError("unknown model family");
}

Complex ModelSpec::chf(const CVec& z) const {
    const Complex I(0.0, 1.0);
    Complex spot_dot(0.0, 0.0);
    for (int i = 0; i < d_; ++i) spot_dot += z[i] * x0_[i];
    return std::exp(I * spot_dot) * chf_factor(z);
}

double ModelSpec::log_chf_factor_at_imag(const Vec& R) const {
    if (static_cast<int>(R.size()) != d_)
        throw DomainError("log_chf_factor_at_imag: wrong dimension");
    const StripCheck sc = strip_contains_X(R);
    if (!sc.inside)
        throw StripViolation("log_chf_factor_at_imag: R outside the strip, margin " +
                             std::to_string(sc.margin));
    if (mu_.empty()) throw DomainError(mu_error_);

    double drift_dot = 0.0;
    for (int i = 0; i < d_; ++i) drift_dot += R[i] * (rate_ + mu_[i]);

    switch (family_) {
        case ModelFamily::GBM:
            return -drift_dot * maturity_ + 0.5 * maturity_ * bilinear_real(Sigma_, R, R);
        case ModelFamily::VG:
            // the strip margin is exactly the power base at z = iR
            return -drift_dot * maturity_ - (maturity_ / nu_) * std::log(sc.margin);
        case ModelFamily::NIG:
            return -drift_dot * maturity_ +
                   delta_ * maturity_ * (gamma0_ - std::sqrt(sc.margin));
    }
    throw ConfigError("unknown model family");
}

CumulantSet ModelSpec::marginal_cumulants(int i) const {
    if (i < 0 || i >= d_) throw DomainError("marginal_cumulants: index out of range");

    // K(h) = log chf(-i h e_i) is the real cumulant generating function of X_T^i
    auto K = [&](double h) {
        CVec z(d_, Complex(0.0, 0.0));
        z[i] = Complex(0.0, -h);
        const Complex v = chf(z);
        return std::log(v.real());
    };

    auto d1 = [&](double h) { return (K(h) - K(-h)) / (2.0 * h); };
    auto d2 = [&](double h) { return (K(h) - 2.0 * K(0.0) + K(-h)) / (h * h); };
    auto d4 = [&](double h) {
        return (K(2.0 * h) - 4.0 * K(h) + 6.0 * K(0.0) - 4.0 * K(-h) + K(-2.0 * h)) /
               (h * h * h * h);
    };

    const double h = 1e-3;
    const double c1a = d1(h), c1b = d1(2.0 * h);
    const double c2a = d2(h), c2b = d2(2.0 * h);
    if (std::abs(c1a - c1b) > 1e-5 * std::max(1.0, std::abs(c1a)))
        throw NumericalError("marginal_cumulants: c1 step sizes disagree");
    if (std::abs(c2a - c2b) > 1e-5 * std::max(1.0, std::abs(c2a)))
        throw NumericalError("marginal_cumulants: c2 step sizes disagree");

    CumulantSet c;
    c.c1 = (4.0 * c1a - c1b) / 3.0;
    c.c2 = (4.0 * c2a - c2b) / 3.0;

    // the fourth difference needs a much larger step before round-off noise
    // stops dominating; its consistency gate is correspondingly looser
    const double H = 0.25;
    const double c4a = d4(H), c4b = d4(2.0 * H);
    const double c4 = (16.0 * c4a - c4b) / 15.0;
    const double c4_floor = 1e-8 * std::max(1.0, c.c2 * c.c2);
    if (std::abs(c4) > c4_floor &&
        std::abs(c4a - c4b) > 0.5 * std::max(std::abs(c4), c4_floor))
        throw NumericalError("marginal_cumulants: c4 step sizes disagree");
    c.c4 = std::max(c4, 0.0);
    return c;
}

const Matrix& ModelSpec::covariance_factor() const {
    if (family_ != ModelFamily::GBM)
        throw ConfigError("covariance_factor: only available for GBM");
    return cov_factor_;
}

nlohmann::json ModelSpec::to_json() const {
    nlohmann::json j;
    j["family"] = to_string(family_);
    j["d"] = d_;
    j["spot"] = spot_;
    j["rate"] = rate_;
    j["maturity"] = maturity_;
    switch (family_) {
        case ModelFamily::GBM:
            j["sigma"] = sigma_;
            j["corr"] = corr_;
            break;
        case ModelFamily::VG:
            j["sigma"] = sigma_;
            j["theta"] = theta_;
            j["nu"] = nu_;
            break;
        case ModelFamily::NIG:
            j["alpha"] = alpha_;
            j["beta"] = beta_;
            j["delta"] = delta_;
            j["mixing"] = mixing_;
            break;
    }
    return j;
}

ModelSpec ModelSpec::from_json(const nlohmann::json& j) {
    const ModelFamily fam = model_family_from_string(j.at("family").get<std::string>());
    const Vec spot = j.at("spot").get<Vec>();
    const double rate = j.at("rate").get<double>();
    const double maturity = j.at("maturity").get<double>();
    const int d = j.at("d").get<int>();
    if (d != static_cast<int>(spot.size()))
        throw ConfigError("model json: d does not match spot length");
    switch (fam) {
        case ModelFamily::GBM: {
            Matrix corr = j.contains("corr") ? j.at("corr").get<Matrix>() : identity_matrix(d);
            return gbm(spot, rate, maturity, j.at("sigma").get<Vec>(), std::move(corr));
        }
        case ModelFamily::VG:
            return vg(spot, rate, maturity, j.at("sigma").get<Vec>(), j.at("theta").get<Vec>(),
                      j.at("nu").get<double>());
        case ModelFamily::NIG: {
            Matrix mix = j.contains("mixing") ? j.at("mixing").get<Matrix>() : identity_matrix(d);
            return nig(spot, rate, maturity, j.at("alpha").get<double>(), j.at("beta").get<Vec>(),
                       j.at("delta").get<double>(), std::move(mix));
        }
    }
    throw ConfigError("unknown model family");
}

} // namespace fourier
