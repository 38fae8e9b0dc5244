#pragma once

#include "fourier/models.hpp"
#include "fourier/payoffs.hpp"
#include "fourier/types.hpp"

#include <functional>

namespace fourier {

// Settings for the Fourier-cosine comparator: n_cos modes per dimension, q
// payoff-DCT terms per dimension, and the truncation width multiplier L.
struct CosConfig {
    int n_cos = 64;
    int q = 1000;
    double truncation_width = 10.0;
};

struct CosRange {
    double a = 0.0;
    double b = 0.0;
};

// Cumulant-based truncation interval [a, b], common to all dimensions:
// a = min_i (c1_i - L sqrt(c2_i + sqrt(c4_i))), b the matching max.
CosRange truncation_range(const ModelSpec& model, const CosConfig& config);

struct CosResult {
    double value = 0.0;
    long long n_cf = 0; // characteristic-function evaluations, 2^{d-1} n_cos^d
};

// Fourier-cosine price for d in {1, 2}: chf cosine coefficients paired with
// payoff coefficients from a midpoint discrete cosine transform on a q^d
// grid, with half weight on the k = 0 terms of every dimension.
CosResult cos2d_price(const ModelSpec& model, const PayoffSpec& payoff,
                      const CosConfig& config);

// Same estimator with an arbitrary payoff sampled on the log-price grid.
CosResult cos2d_price(const ModelSpec& model,
                      const std::function<double(const Vec&)>& payoff,
                      const CosConfig& config);

} // namespace fourier
