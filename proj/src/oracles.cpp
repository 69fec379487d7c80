#include "phonospec/oracles.hpp"

#include "phonospec/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace phonospec {

using constants::pi;

void validate(const GaussianOracleInput& in) {
    if (!(std::isfinite(in.strength) && in.strength >= 0.0)) throw ValidationError("oracle: strength must be >= 0");
    if (!(std::isfinite(in.center) && in.center >= 0.0)) throw ValidationError("oracle: center must be >= 0");
    if (!(std::isfinite(in.width) && in.width > 0.0)) throw ValidationError("oracle: width must be > 0");
    if (!(std::isfinite(in.omega_m) && in.omega_m > 0.0)) throw ValidationError("oracle: omega_m must be > 0");
    if (!(std::isfinite(in.t) && in.t >= 0.0)) throw ValidationError("oracle: t must be >= 0");
    if (!(std::isfinite(in.mass) && in.mass > 0.0)) throw ValidationError("oracle: mass must be > 0");
}

namespace {

double base_scale(const GaussianOracleInput& in) {
    return in.strength / (in.mass * in.omega_m * reduced_planck(in.units));
}

// Reduced integral for a Gaussian centred at `center` (any sign).
double reduced(const GaussianOracleInput& in, double center, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    const double g = in.width;
    const double gt = g * in.t;
    const double k = (center - in.omega_m) / g;
    // e^{-z^2/2} is below 1e-195 past z = 30 while the integral is at least ~1/k^2
    const double upper = std::min(gt, 30.0);
    const double ak = std::abs(k);
    double sum = 0.0;
    if (ak <= pi) {
        const auto n = static_cast<long>(std::ceil(upper));
        auto f = [gt, k](double z) { return (gt - z) * std::exp(-0.5 * z * z) * std::cos(k * z); };
        for (long i = 0; i < n; ++i) {
            const double a = upper * static_cast<double>(i) / static_cast<double>(n);
            const double b = upper * static_cast<double>(i + 1) / static_cast<double>(n);
            sum += gauss_kronrod<double, 61>::integrate(f, a, b, 15, rel_tol);
        }
    } else {
        // one lobe of cos(k z) per piece, centred on j pi / k; the phase is
        // taken relative to the centre so it stays exact for large k z
        const double half = 0.5 * pi / ak;
        const auto n = static_cast<long>(std::ceil(upper / (2.0 * half) + 0.5));
        for (long j = 0; j < n; ++j) {
            const double c = static_cast<double>(j) * 2.0 * half;
            const double lo = std::max(-half, -c);
            const double hi = std::min(half, upper - c);
            if (hi <= lo) break;
            auto f = [gt, c, ak](double s) {
                const double z = c + s;
                return (gt - z) * std::exp(-0.5 * z * z) * std::cos(ak * s);
            };
            const double v = gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, rel_tol);
            sum += (j % 2 == 0) ? v : -v;
        }
    }
    return base_scale(in) / (2.0 * g * std::sqrt(2.0 * pi)) * sum;
}

}  // namespace

double gaussian_Nt(const GaussianOracleInput& in, double rel_tol) {
    validate(in);
    if (in.strength == 0.0 || in.t == 0.0) return 0.0;
    return reduced(in, in.center, rel_tol);
}

double gaussian_Nt_even(const GaussianOracleInput& in, double rel_tol) {
    validate(in);
    if (in.center < 8.0 * in.width)
        throw DomainError("oracle: even-spectrum form needs center >= 8 width");
    if (in.strength == 0.0 || in.t == 0.0) return 0.0;
    return reduced(in, in.center, rel_tol) + reduced(in, -in.center, rel_tol);
}

double gaussian_narrow_closed_form(const GaussianOracleInput& in) {
    validate(in);
    if (!(in.width * in.t < 0.05)) throw DomainError("oracle: narrow limit needs gamma t < 0.05");
    const double d = in.center - in.omega_m;
    const double dt = d * in.t;
    // (1 - cos(dt)) / d^2 = t^2 sin^2(dt/2) / (dt/2)^2 / 2
    double shape;
    if (std::abs(dt) < 1e-6) {
        shape = 0.5 * in.t * in.t * (1.0 - dt * dt / 12.0);
    } else {
        const double s = std::sin(0.5 * dt);
        shape = 2.0 * s * s / (d * d);
    }
    return base_scale(in) * in.width / (2.0 * std::sqrt(2.0 * pi)) * shape;
}

double gaussian_limit_narrow(const GaussianOracleInput& in) {
    validate(in);
    if (!(in.width * in.t < 0.05)) throw DomainError("oracle: narrow limit needs gamma t < 0.05");
    if (std::abs(in.center - in.omega_m) * in.t <= 1.0)
        return std::sqrt(1.0 / (2.0 * pi)) * base_scale(in) * in.width * in.t * in.t / 4.0;
    return gaussian_narrow_closed_form(in);
}

double gaussian_limit_broad(const GaussianOracleInput& in) {
    validate(in);
    if (!(in.width * in.t > 20.0)) throw DomainError("oracle: broad limit needs gamma t > 20");
    const double u = (in.center - in.omega_m) / in.width;
    return base_scale(in) * in.t / 4.0 * std::exp(-0.5 * u * u);
}

double white_noise_nt(double level, double mass, double omega_m, double t, double n0, Units units) {
    if (!(mass > 0.0 && omega_m > 0.0)) throw ValidationError("oracle: mass and omega_m must be > 0");
    return n0 + level * t / (4.0 * mass * omega_m * reduced_planck(units));
}

}  // namespace phonospec
