#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace karamata {

// Complex Gamma by the Lanczos approximation (g = 7, 9 terms), with reflection
// for Re z < 1/2. Relative accuracy is about 1e-15 away from the poles.
inline std::complex<double> lanczos_gamma(std::complex<double> z) {
    using std::numbers::pi;
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace karamata
