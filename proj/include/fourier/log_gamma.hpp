#pragma once

#include "fourier/types.hpp"

namespace fourier {

// Principal-branch log Gamma on the complex plane (Lanczos for Re z >= 0.5,
// recurrence for 0 <= Re z < 0.5, reflection for Re z < 0). Throws PoleError
// at non-positive integers.
Complex log_gamma(Complex z);

} // namespace fourier
