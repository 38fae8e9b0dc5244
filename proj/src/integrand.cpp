#include "fourier/integrand.hpp"
#include "fourier/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace fourier {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Vec all_margins(const ModelSpec& model, const PayoffSpec& payoff, const Vec& R) {
    Vec m;
    const StripCheck mx = model.strip_contains_X(R);
    if (std::isfinite(mx.margin)) m.push_back(mx.margin);
    const PayoffStripCheck mp = payoff.strip_contains_P(R);
    m.insert(m.end(), mp.margins.begin(), mp.margins.end());
    return m;
}

bool strictly_feasible(const Vec& margins, double floor = 0.0) {
    return std::all_of(margins.begin(), margins.end(),
                       [floor](double v) { return v > floor; });
}

} // namespace

DampingVector make_damping(const ModelSpec& model, const PayoffSpec& payoff, Vec R) {
    const StripCheck mx = model.strip_contains_X(R);
    const PayoffStripCheck mp = payoff.strip_contains_P(R);
    if (!mx.inside || !mp.inside)
        throw StripViolation("damping vector lies outside the valuation strip");
    DampingVector d;
    d.R = std::move(R);
    d.model_margin = mx.margin;
    d.payoff_margins = mp.margins;
    return d;
}

Vec integration_shift(const ModelSpec& model, const PayoffSpec& payoff) {
    Vec shift = model.x0();
    if (payoff.family() == PayoffFamily::BasketPut) {
        const Vec& w = payoff.weights();
        for (size_t i = 0; i < shift.size(); ++i) shift[i] += std::log(w[i]);
    }
    return shift;
}

GFunction::GFunction(const ModelSpec& model, const PayoffSpec& payoff, Vec R)
    : model_(&model), payoff_(&payoff), R_(std::move(R)) {
    if (model.dim() != payoff.dim())
        throw ConfigError("integrand: model and payoff dimensions differ");
    if (static_cast<int>(R_.size()) != model.dim())
        throw ConfigError("integrand: damping vector has wrong dimension");
    shift_ = integration_shift(model, payoff);
    prefactor_ = std::pow(2.0 * kPi, -model.dim()) * std::exp(-model.rate() * model.maturity());
}

double GFunction::operator()(const Vec& u) const {
    const int d = dim();
    CVec z(d);
    Complex shift_dot(0.0, 0.0);
    for (int i = 0; i < d; ++i) {
        z[i] = Complex(u[i], R_[i]);
        shift_dot += z[i] * shift_[i];
    }
    const Complex I(0.0, 1.0);
    const Complex v = model_->chf_factor(z) * std::exp(I * shift_dot) * payoff_->payoff_hat(z);
    return prefactor_ * v.real();
}

double g(const Vec& u, const DampingVector& damping, const ModelSpec& model,
         const PayoffSpec& payoff) {
    return GFunction(model, payoff, damping.R)(u);
}

double log_g0(const ModelSpec& model, const PayoffSpec& payoff, const Vec& R) {
    const Vec shift = integration_shift(model, payoff);
    double shift_dot = 0.0;
    for (size_t i = 0; i < shift.size(); ++i) shift_dot += R[i] * shift[i];
    return -model.dim() * std::log(2.0 * kPi) - model.rate() * model.maturity() -
           shift_dot + model.log_chf_factor_at_imag(R) + payoff.log_hat_at_imag(R);
}

namespace {

// analytic center of the model strip, used when the default start is outside
Vec model_strip_center(const ModelSpec& model) {
    const int d = model.dim();
    switch (model.family()) {
        case ModelFamily::GBM:
            return Vec(d, 0.0);
        case ModelFamily::VG: {
            // maximizer of nu<theta,R> - nu/2 R'Sigma R with diagonal Sigma
            Vec c(d);
            for (int i = 0; i < d; ++i)
                c[i] = model.theta()[i] / (model.sigma()[i] * model.sigma()[i]);
            return c;
        }
        case ModelFamily::NIG:
            return model.beta();
    }
    throw ConfigError("unknown model family");
}

Vec default_start(const ModelSpec& model, const PayoffSpec& payoff) {
    const int d = model.dim();
    if (payoff.family() == PayoffFamily::BasketPut) return Vec(d, 1.0);
    return Vec(d, -2.0 / d - 1.0);
}

class BarrierProblem {
public:
    BarrierProblem(const ModelSpec& model, const PayoffSpec& payoff)
        : model_(&model), payoff_(&payoff) {}

    Vec margins(const Vec& R) const { return all_margins(*model_, *payoff_, R); }

    bool feasible(const Vec& R) const { return strictly_feasible(margins(R)); }

    double objective(const Vec& R) const { return log_g0(*model_, *payoff_, R); }

    double barrier(const Vec& R, double t) const {
        const Vec m = margins(R);
        if (!strictly_feasible(m)) return std::numeric_limits<double>::infinity();
        double v = objective(R);
        for (double mi : m) v -= t * std::log(mi);
        return v;
    }

    Vec gradient(const std::function<double(const Vec&)>& f, const Vec& R) const {
        const int d = static_cast<int>(R.size());
        Vec grad(d);
        for (int i = 0; i < d; ++i) {
            double h = 1e-6 * (1.0 + std::abs(R[i]));
            Vec rp = R, rm = R;
            // shrink the step if a probe point falls outside the domain
            for (int attempt = 0; attempt < 40; ++attempt) {
                rp[i] = R[i] + h;
                rm[i] = R[i] - h;
                const double fp = f(rp), fm = f(rm);
                if (std::isfinite(fp) && std::isfinite(fm)) {
                    grad[i] = (fp - fm) / (2.0 * h);
                    break;
                }
                h *= 0.5;
                if (attempt == 39)
                    throw NumericalError("optimal_damping: gradient probe infeasible");
            }
        }
        return grad;
    }

private:
    const ModelSpec* model_;
    const PayoffSpec* payoff_;
};

double inf_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

DampingResult optimal_damping(const ModelSpec& model, const PayoffSpec& payoff,
                              const OptimizerOptions& opts) {
    if (model.dim() != payoff.dim())
        throw ConfigError("optimal_damping: model and payoff dimensions differ");
    const int d = model.dim();
    BarrierProblem prob(model, payoff);

    // starting point: family default, shrunk toward the model-strip center
    // until strictly feasible
    Vec R = opts.start.value_or(default_start(model, payoff));
    Vec feasible_start;
    if (!prob.feasible(R)) {
        const Vec center = model_strip_center(model);
        bool found = false;
        double t = 1.0;
        for (int k = 0; k < 80 && !found; ++k) {
            t *= 0.7;
            Vec cand(d);
            for (int i = 0; i < d; ++i) cand[i] = center[i] + t * (R[i] - center[i]);
            if (prob.feasible(cand)) {
                R = cand;
                found = true;
            }
        }
        if (!found)
            throw InfeasibleError("optimal_damping: no strictly feasible starting point");
    }
    feasible_start = R;

    int iterations = 0;
    const double barrier_weights[] = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};

    for (double t : barrier_weights) {
        auto f = [&](const Vec& x) { return prob.barrier(x, t); };

        // BFGS on the barrier objective with an Armijo backtracking search
        std::vector<Vec> H(d, Vec(d, 0.0));
        for (int i = 0; i < d; ++i) H[i][i] = 1.0;
        Vec grad = prob.gradient(f, R);
        double fval = f(R);

        for (int inner = 0; inner < 120; ++inner) {
            if (iterations >= opts.max_iter) break;
            ++iterations;

            Vec p(d, 0.0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) p[i] -= H[i][j] * grad[j];
            double slope = 0.0;
            for (int i = 0; i < d; ++i) slope += p[i] * grad[i];
            if (slope >= 0.0) { // safeguard: fall back to steepest descent
                slope = 0.0;
                for (int i = 0; i < d; ++i) {
                    p[i] = -grad[i];
                    slope -= grad[i] * grad[i];
                }
            }

            double step = 1.0;
            Vec Rn(d);
            double fn = std::numeric_limits<double>::infinity();
            bool accepted = false;
            for (int ls = 0; ls < 60; ++ls) {
                for (int i = 0; i < d; ++i) Rn[i] = R[i] + step * p[i];
                fn = f(Rn);
                if (std::isfinite(fn) && fn <= fval + 1e-4 * step * slope) {
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;

            Vec gn = prob.gradient(f, Rn);
            Vec s(d), y(d);
            double sy = 0.0;
            for (int i = 0; i < d; ++i) {
                s[i] = Rn[i] - R[i];
                y[i] = gn[i] - grad[i];
                sy += s[i] * y[i];
            }
            if (sy > 1e-12 * inf_norm(s) * inf_norm(y) && sy > 0.0) {
                // H <- (I - s y'/sy) H (I - y s'/sy) + s s'/sy
                Vec hy(d, 0.0);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) hy[i] += H[i][j] * y[j];
                double yhy = 0.0;
                for (int i = 0; i < d; ++i) yhy += y[i] * hy[i];
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        H[i][j] += (sy + yhy) * s[i] * s[j] / (sy * sy) -
                                   (hy[i] * s[j] + s[i] * hy[j]) / sy;
            } else {
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) H[i][j] = (i == j) ? 1.0 : 0.0;
            }

            const double step_norm = inf_norm(s);
            R = Rn;
            grad = gn;
            fval = fn;
            if (inf_norm(grad) < opts.tol || step_norm < 1e-12 * (1.0 + inf_norm(R))) break;
        }
        if (iterations >= opts.max_iter) break;
    }

    const bool converged = iterations < opts.max_iter;

    // pull back toward the feasible start if any margin ended below the
    // interiority floor
    Vec m = prob.margins(R);
    for (int k = 0; k < 60 && !strictly_feasible(m, 1e-6); ++k) {
        for (int i = 0; i < d; ++i)
            R[i] = feasible_start[i] + 0.9 * (R[i] - feasible_start[i]);
        m = prob.margins(R);
    }

    DampingResult result;
    result.damping = make_damping(model, payoff, R);
    result.objective = log_g0(model, payoff, R);
    result.iterations = iterations;
    result.converged = converged;
    return result;
}

} // namespace fourier
