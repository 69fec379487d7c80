// oracles.hpp - closed-form and reduced-integral phonon numbers for reference use

#pragma once

#include "phonospec/constants.hpp"

namespace phonospec {

struct GaussianOracleInput {
    double strength = 0.0;  // eta
    double center = 0.0;    // nu0, rad/s
    double width = 1.0;     // gamma, rad/s
    double omega_m = 1.0;   // rad/s
    double t = 0.0;         // s
    double mass = 1.0;      // kg
    Units units = Units::SI;
};

void validate(const GaussianOracleInput& in);

// Heating from a full Gaussian line eta exp(-(nu - nu0)^2 / 2 gamma^2) on the
// whole real axis, through the reduced one-dimensional integral
//   (eta / (2 gamma m omega_m hbar sqrt(2 pi))) int_0^{gamma t} (gamma t - z) e^{-z^2/2} cos(delta z / gamma) dz
// with delta = nu0 - omega_m.
double gaussian_Nt(const GaussianOracleInput& in, double rel_tol = 1e-10);

// Same line seen through an even spectrum: the peak at nu0 plus its mirror
// at -nu0. Requires nu0 >= 8 gamma so the two halves do not overlap.
double gaussian_Nt_even(const GaussianOracleInput& in, double rel_tol = 1e-10);

// gamma t < 0.05. Closed form
//   (eta gamma / (2 m omega_m hbar sqrt(2 pi))) (1 - cos(delta t)) / delta^2
double gaussian_narrow_closed_form(const GaussianOracleInput& in);

// As above, but returns sqrt(1/2pi) eta gamma t^2 / (4 m omega_m hbar) when |delta| <= 1/t.
double gaussian_limit_narrow(const GaussianOracleInput& in);

// gamma t > 20: (eta t / (4 m omega_m hbar)) exp(-delta^2 / (2 gamma^2))
double gaussian_limit_broad(const GaussianOracleInput& in);

// n0 + D_p t / (4 m omega_m hbar)
double white_noise_nt(double level, double mass, double omega_m, double t, double n0,
                      Units units = Units::SI);

}  // namespace phonospec
