#pragma once

#include "fourier/models.hpp"
#include "fourier/payoffs.hpp"
#include "fourier/types.hpp"

#include <optional>

namespace fourier {

// Damping vector R together with the strip margins recorded at construction.
struct DampingVector {
    Vec R;
    double model_margin = 0.0;
    Vec payoff_margins;
};

// Validates R against both strips; throws StripViolation if R is outside
// the intersection.
DampingVector make_damping(const ModelSpec& model, const PayoffSpec& payoff, Vec R);

// Log-spot vector the valuation integral is taken against. Basket weights
// are absorbed here so the payoff transform stays in unweighted form.
Vec integration_shift(const ModelSpec& model, const PayoffSpec& payoff);

// Damped Fourier integrand: (2 pi)^-d e^{-rT} Re[ chf(u + iR) payoff_hat(u + iR) ]
// evaluated against the shifted log-spots.
double g(const Vec& u, const DampingVector& damping, const ModelSpec& model,
         const PayoffSpec& payoff);

// log g(0; R), evaluated fully in log space (g at the origin is real positive
// for admissible R and can span hundreds of orders of magnitude).
double log_g0(const ModelSpec& model, const PayoffSpec& payoff, const Vec& R);

// Repeated evaluation with fixed (model, payoff, R); precomputes the shift
// and the discount prefactor.
class GFunction {
public:
    GFunction(const ModelSpec& model, const PayoffSpec& payoff, Vec R);
    double operator()(const Vec& u) const;
    int dim() const { return static_cast<int>(R_.size()); }
    const Vec& damping() const { return R_; }

private:
    const ModelSpec* model_;
    const PayoffSpec* payoff_;
    Vec R_;
    Vec shift_;
    double prefactor_ = 0.0;
};

struct OptimizerOptions {
    double tol = 1e-6;          // gradient-norm / step-size tolerance
    int max_iter = 500;         // total inner-iteration cap
    std::optional<Vec> start;   // overrides the family-specific default
};

struct DampingResult {
    DampingVector damping;
    double objective = 0.0;     // log g(0; R) at the solution
    int iterations = 0;
    bool converged = true;      // false when the iteration cap was hit
};

// Minimizes log g(0; R) over the strip intersection by a log-barrier method
// with BFGS inner iterations and central-difference gradients. Deterministic.
// Throws InfeasibleError when no strictly feasible starting point is found.
DampingResult optimal_damping(const ModelSpec& model, const PayoffSpec& payoff,
                              const OptimizerOptions& opts = {});

} // namespace fourier
