#include "fourier/errors.hpp"
#include "fourier/log_gamma.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using fourier::Complex;
using fourier::log_gamma;

namespace {

double rel_diff(Complex got, Complex want) {
    const double scale = std::max(1.0, std::abs(want));
    return std::abs(got - want) / scale;
}

} // namespace

TEST_CASE("log gamma at small integers") {
    CHECK(std::abs(log_gamma(Complex(1.0, 0.0))) < 1e-14);
    CHECK(std::abs(log_gamma(Complex(2.0, 0.0))) < 1e-14);
    CHECK(rel_diff(log_gamma(Complex(5.0, 0.0)), Complex(std::log(24.0), 0.0)) < 1e-14);
    CHECK(rel_diff(log_gamma(Complex(0.5, 0.0)),
                   Complex(0.5 * std::log(4.0 * std::atan(1.0)), 0.0)) < 1e-14);
}

TEST_CASE("log gamma matches high-precision references") {
    // Values frozen from a 30-digit arbitrary-precision evaluation.
    const std::vector<std::pair<Complex, Complex>> table = {
        {{2.5, 3.0}, {-1.47095461034884169, 2.82261563826079945}},
        {{0.5, 0.0}, {0.572364942924700087, 0.0}},
        {{1.0, -1.0}, {-0.650923199301856339, 0.301640320467533198}},
        {{0.1, 0.1}, {1.89899127367590016, -0.827464707773075746}},
        {{-1.5, 2.5}, {-5.013986529332358, -4.07184944774749675}},
        {{6.0, -4.0}, {3.44246511258233344, -7.13009876165727113}},
        {{0.001, 50.0}, {-79.5729772530140695, 144.815666205445886}},
        {{3.0, 0.0}, {0.693147180559945309, 0.0}},
    };
    for (const auto& [z, want] : table) {
        CAPTURE(z.real());
        CAPTURE(z.imag());
        CHECK(rel_diff(log_gamma(z), want) < 1e-12);
    }
}

TEST_CASE("log gamma satisfies the recurrence") {
    const std::vector<Complex> points = {
        {0.3, 0.7}, {1.2, -2.0}, {4.5, 10.0}, {0.9, 0.0}, {2.5, 3.0}, {7.0, -40.0}};
    for (const Complex& z : points) {
        const Complex lhs = log_gamma(z + Complex(1.0, 0.0));
        const Complex rhs = log_gamma(z) + std::log(z);
        CAPTURE(z.real());
        CAPTURE(z.imag());
        CHECK(rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("log gamma conjugate symmetry") {
    const std::vector<Complex> points = {{2.5, 3.0}, {0.1, 0.1}, {6.0, -4.0}, {0.7, 12.0}};
    for (const Complex& z : points) {
        const Complex a = log_gamma(std::conj(z));
        const Complex b = std::conj(log_gamma(z));
        CHECK(rel_diff(a, b) < 1e-13);
    }
}

TEST_CASE("log gamma throws at non-positive integers") {
    CHECK_THROWS_AS(log_gamma(Complex(0.0, 0.0)), fourier::PoleError);
    CHECK_THROWS_AS(log_gamma(Complex(-1.0, 0.0)), fourier::PoleError);
    CHECK_THROWS_AS(log_gamma(Complex(-7.0, 0.0)), fourier::PoleError);
}

TEST_CASE("log gamma reflection region stays finite and accurate") {
    const Complex got = log_gamma(Complex(-2.5, 1.5));
    CHECK(std::isfinite(got.real()));
    CHECK(std::isfinite(got.imag()));
    // exp(log_gamma) must reproduce Gamma(z+1) = z Gamma(z) across the
    // reflected region.
    const Complex z(-2.5, 1.5);
    const Complex lhs = std::exp(log_gamma(z + Complex(1.0, 0.0)));
    const Complex rhs = z * std::exp(log_gamma(z));
    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
}
