#pragma once

#include <complex>
#include <vector>

namespace fourier {

using Complex = std::complex<double>;
using Vec = std::vector<double>;
using CVec = std::vector<Complex>;
using Matrix = std::vector<std::vector<double>>; // row-major, small dimensions

inline Matrix identity_matrix(int d) {
    Matrix m(d, Vec(d, 0.0));
    for (int i = 0; i < d; ++i) m[i][i] = 1.0;
    return m;
}

} // namespace fourier
