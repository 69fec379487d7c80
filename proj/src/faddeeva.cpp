#include "phonospec/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace phonospec {

namespace {

constexpr int N = 40;

struct Coefficients {
    double L;
    std::array<double, N> a;  // a[n] multiplies Z^n
};

// a_n are the Fourier coefficients of f(t) = exp(-t^2)(L^2 + t^2) under
// the map t = L tan(theta/2), sampled on 4N points.
Coefficients make_coefficients() {
    constexpr int M = 2 * N;
    constexpr int M2 = 2 * M;
    Coefficients c{};
    c.L = std::sqrt(N / std::sqrt(2.0));
    std::array<double, M2> f{};
    f[0] = 0.0;
    for (int k = -M + 1; k <= M - 1; ++k) {
        const double theta = k * std::numbers::pi / M;
        const double t = c.L * std::tan(theta / 2.0);
        f[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (c.L * c.L + t * t);
    }
    // fftshift for even length: swap halves
    std::array<double, M2> g{};
    for (int i = 0; i < M2; ++i) g[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>((i + M) % M2)];
    for (int n = 1; n <= N; ++n) {
        double re = 0.0;
        for (int m = 0; m < M2; ++m)
            re += g[static_cast<std::size_t>(m)] * std::cos(2.0 * std::numbers::pi * n * m / M2);
        c.a[static_cast<std::size_t>(n - 1)] = re / M2;
    }
    return c;
}

const Coefficients& coefficients() {
    static const Coefficients c = make_coefficients();
    return c;
}

std::complex<double> w_upper(std::complex<double> z) {
    const Coefficients& c = coefficients();
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> lmiz = c.L - i * z;
    const std::complex<double> Z = (c.L + i * z) / lmiz;
    std::complex<double> p = 0.0;
    for (int n = N - 1; n >= 0; --n) p = p * Z + c.a[static_cast<std::size_t>(n)];
    return 2.0 * p / (lmiz * lmiz) + (1.0 / std::sqrt(std::numbers::pi)) / lmiz;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
    if (z.imag() >= 0.0) return w_upper(z);
    return 2.0 * std::exp(-z * z) - w_upper(-z);
}

}  // namespace phonospec
