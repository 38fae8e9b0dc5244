#include "fourier/log_gamma.hpp"
#include "fourier/errors.hpp"

#include <cmath>

namespace fourier {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// log sin(pi z), continuous on each open half-plane and finite away from the
// integers; for |Im z| large the direct sine would overflow, so the dominant
// exponential is factored out first.
Complex log_sin_pi(Complex z) {
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| <= 1 here
    const Complex i_pi_z(-kPi * z.imag(), kPi * z.real());
    const Complex w = std::exp(2.0 * i_pi_z);
    return Complex(-std::log(2.0), 0.5 * kPi) - i_pi_z + std::log(1.0 - w);
}

Complex lanczos_core(Complex z) {
    // valid for Re z >= 0.5
    Complex acc(kLanczos[0], 0.0);
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (z + Complex(k - 1, 0.0));
    const Complex t = z + 6.5; // z + g - 0.5
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace

Complex log_gamma(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("log_gamma: pole at non-positive integer");
    if (z.real() < 0.0)
        return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
    if (z.real() < 0.5)
        return log_gamma(z + 1.0) - std::log(z);
    return lanczos_core(z);
}

} // namespace fourier
