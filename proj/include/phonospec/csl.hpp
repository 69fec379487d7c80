// csl.hpp - continuous spontaneous localization coupling for a homogeneous sphere

#pragma once

#include "phonospec/constants.hpp"
#include "phonospec/kernel.hpp"
#include "phonospec/spectra.hpp"

namespace phonospec {

struct CslParams {
    double collapse_rate = 0.0;                          // lambda, 1/s
    double correlation_length = 1e-7;                    // r_C, m
    double reference_mass = constants::nucleon_mass;     // m0, kg
    double total_mass = 0.0;                             // M, kg
};

void validate(const CslParams& p);

// h(x) / x^3 with h(x) = x - 2 + exp(-x) (x + 2); tends to 1/6 at x -> 0.
double csl_form_function(double x);

// eta_z = 3 lambda M^2 / (m0^2 r_C^2) * h(x) / x^3,  x = R^2 / r_C^2
double eta_z(const CslParams& p, double radius);

// eta_z hbar / (2 pi m omega_m); hbar drops out in natural units.
double csl_prefactor(const CslParams& p, double radius, double mass, double omega_m,
                     Units units = Units::SI);

PhononEstimate csl_expected_phonons(const CslParams& p, double radius, const NoiseSpectrum& spectrum,
                                    double omega_m, double t, double mass, double n0,
                                    const QuadratureConfig& q = {}, Units units = Units::SI);

// <x^2> <= theta r_C^2
bool small_oscillation_ok(double position_variance, double correlation_length, double theta = 0.01);

}  // namespace phonospec
