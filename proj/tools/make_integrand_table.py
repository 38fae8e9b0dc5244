#!/usr/bin/env python3
"""Regenerate the damped-integrand reference table used in the unit tests.

Evaluates g(u; R) = (2pi)^-d e^{-rT} Re[phi(u+iR) e^{i<u+iR, x>} Phat(u+iR)]
with mpmath at 40 digits, independently of the C++ implementation.
"""

import mpmath as mp

mp.mp.dps = 40

I = mp.mpc(0, 1)


def dot(a, b):
    return mp.fsum((x * y for x, y in zip(a, b)), absolute=False)


def cdot(a, b):
    return sum((x * y for x, y in zip(a, b)), mp.mpc(0))


def gbm_factor(z, r, T, sigma):
    mu = [-0.5 * s * s for s in sigma]
    drift = cdot(z, [r + m for m in mu])
    quad = sum(zi * zi * s * s for zi, s in zip(z, sigma))
    return mp.exp(I * drift * T - T / 2 * quad)


def vg_factor(z, r, T, sigma, theta, nu):
    mu = [mp.log(1 - s * s * nu / 2 - t * nu) / nu for s, t in zip(sigma, theta)]
    drift = cdot(z, [r + m for m in mu])
    arg = 1 - I * nu * cdot(theta, z) + nu / 2 * sum(
        zi * zi * s * s for zi, s in zip(z, sigma))
    return mp.exp(I * drift * T) * mp.exp(-(T / nu) * mp.log(arg))


def nig_factor(z, r, T, alpha, beta, delta):
    mu = [-delta * (mp.sqrt(alpha**2 - b**2) - mp.sqrt(alpha**2 - (b + 1)**2))
          for b in beta]
    drift = cdot(z, [r + m for m in mu])
    shifted = [b + I * zi for b, zi in zip(beta, z)]
    gamma0 = mp.sqrt(alpha**2 - dot(beta, beta))
    root = mp.sqrt(alpha**2 - cdot(shifted, shifted))
    return mp.exp(I * drift * T + delta * T * (gamma0 - root))


def basket_put_hat(z, strike):
    s = sum(z)
    log_hat = (1 - I * s) * mp.log(strike)
    log_hat += sum(mp.loggamma(-I * zj) for zj in z)
    log_hat -= mp.loggamma(-I * s + 2)
    return mp.exp(log_hat)


def call_on_min_hat(z, strike):
    s = sum(z)
    log_hat = (1 - I * s) * mp.log(strike)
    log_hat -= mp.log(I * s - 1)
    log_hat -= sum(mp.log(I * zj) for zj in z)
    return mp.exp(log_hat)


def g_value(factor, hat, shift, r, T, u, R):
    d = len(u)
    z = [ui + I * Ri for ui, Ri in zip(u, R)]
    val = factor(z) * mp.exp(I * cdot(z, shift)) * hat(z)
    return (2 * mp.pi)**(-d) * mp.exp(-r * T) * val.real


def main():
    r, T, K = mp.mpf(0), mp.mpf(1), mp.mpf(100)
    bp_shift = [mp.log(50), mp.log(50)]
    com_shift = [mp.log(100), mp.log(100)]
    cases = [
        ("gbm basket put", lambda z: gbm_factor(z, r, T, [0.4, 0.4]),
         lambda z: basket_put_hat(z, K), bp_shift, [2.5, 2.5]),
        ("gbm call on min", lambda z: gbm_factor(z, r, T, [0.4, 0.8]),
         lambda z: call_on_min_hat(z, K), com_shift, [-3.6, -1.8]),
        ("vg basket put",
         lambda z: vg_factor(z, r, T, [0.4, 0.4], [-0.3, -0.3], mp.mpf("0.257")),
         lambda z: basket_put_hat(z, K), bp_shift, [1.7, 1.7]),
        ("vg call on min",
         lambda z: vg_factor(z, r, T, [0.4, 0.8], [-0.3, 0.0], mp.mpf("0.257")),
         lambda z: call_on_min_hat(z, K), com_shift,
         [mp.mpf("-3.500169"), mp.mpf("-1.560287")]),
        ("nig basket put",
         lambda z: nig_factor(z, r, T, 15, [-3.0, -3.0], mp.mpf("0.2")),
         lambda z: basket_put_hat(z, K), bp_shift, [6.1, 6.1]),
        ("nig call on min",
         lambda z: nig_factor(z, r, T, 10, [-3.0, 0.0], mp.mpf("0.2")),
         lambda z: call_on_min_hat(z, K), com_shift, [-7.5, -6.8]),
    ]
    points = [[mp.mpf(0), mp.mpf(0)], [mp.mpf("0.7"), mp.mpf("-0.4")],
              [mp.mpf("2.5"), mp.mpf("1.25")]]
    for name, factor, hat, shift, damping in cases:
        print(name)
        for u in points:
            v = g_value(factor, hat, shift, r, T, u, damping)
            print(f"  u=({float(u[0])},{float(u[1])}) -> {mp.nstr(v, 17)}")


if __name__ == "__main__":
    main()
