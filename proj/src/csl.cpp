#include "phonospec/csl.hpp"

#include "phonospec/errors.hpp"

#include <cmath>

namespace phonospec {

void validate(const CslParams& p) {
    if (!(std::isfinite(p.collapse_rate) && p.collapse_rate >= 0.0))
        throw ValidationError("csl: collapse rate must be >= 0");
    if (!(std::isfinite(p.correlation_length) && p.correlation_length > 0.0))
        throw ValidationError("csl: correlation length must be > 0");
    if (!(std::isfinite(p.reference_mass) && p.reference_mass > 0.0))
        throw ValidationError("csl: reference mass must be > 0");
    if (!(std::isfinite(p.total_mass) && p.total_mass >= 0.0))
        throw ValidationError("csl: total mass must be >= 0");
}

double csl_form_function(double x) {
    if (!(x >= 0.0)) throw ValidationError("csl: form function needs x >= 0");
    if (x <= 1.0) {
        // sum_{k>=3} (-1)^(k+1) (k-2) x^(k-3) / k!
        double term = 1.0 / 6.0;  // x^(k-3) / k! at k = 3
        double sum = term;
        for (int k = 4; k < 30; ++k) {
            term *= -x / k;
            sum += term * (k - 2);
        }
        return sum;
    }
    const double h = (x - 2.0) + std::exp(-x) * (x + 2.0);
    return h / (x * x * x);
}

double eta_z(const CslParams& p, double radius) {
    validate(p);
    if (!(std::isfinite(radius) && radius > 0.0)) throw ValidationError("csl: radius must be > 0");
    const double rc = p.correlation_length;
    const double x = (radius / rc) * (radius / rc);
    const double mu = p.total_mass / p.reference_mass;
    return 3.0 * p.collapse_rate * mu * mu / (rc * rc) * csl_form_function(x);
}

double csl_prefactor(const CslParams& p, double radius, double mass, double omega_m, Units units) {
    if (!(mass > 0.0 && omega_m > 0.0)) throw ValidationError("csl: mass and omega_m must be > 0");
    return eta_z(p, radius) * reduced_planck(units) / (constants::two_pi * mass * omega_m);
}

PhononEstimate csl_expected_phonons(const CslParams& p, double radius, const NoiseSpectrum& spectrum,
                                    double omega_m, double t, double mass, double n0,
                                    const QuadratureConfig& q, Units units) {
    const double a = csl_prefactor(p, radius, mass, omega_m, units);
    return expected_phonons(spectrum, a, 0.0, n0, {omega_m, t}, q);
}

bool small_oscillation_ok(double position_variance, double correlation_length, double theta) {
    if (!(position_variance >= 0.0)) throw ValidationError("csl: position variance must be >= 0");
    if (!(correlation_length > 0.0)) throw ValidationError("csl: correlation length must be > 0");
    return position_variance <= theta * correlation_length * correlation_length;
}

}  // namespace phonospec
