// kernel.hpp - sinc^2 filter kernel, heating integrals and the phonon forward model

#pragma once

#include "phonospec/constants.hpp"
#include "phonospec/quadrature.hpp"
#include "phonospec/spectra.hpp"

#include <cstddef>
#include <vector>

namespace phonospec {

struct FilterKernelParams {
    double omega_m = 1.0;  // rad/s
    double t = 0.0;        // s
};

void validate(const FilterKernelParams& p);

struct QuadratureConfig {
    double rel_tol = 1e-6;
    double nodes_per_period = 8.0;      // samples per kernel period 2pi/t, at least
    double tail_fraction = 0.1;         // neglected tail remainder vs tolerance
    int min_core_periods = 16;          // exact window half-width around omega_m
    double max_exact_periods = 2e4;     // wider features are period-averaged
    int max_depth = 40;
    std::size_t max_intervals = 4000000;
    bool operator==(const QuadratureConfig&) const = default;
};

void validate(const QuadratureConfig& q);

struct MomentCoefficients {
    double gamma = 0.0;
    double theta = 0.0;
};

struct PhononEstimate {
    double value = 0.0;
    double abs_error = 0.0;
};

// sin^2((omega_m - nu) t / 2) / (omega_m - nu)^2
double filter_kernel(const FilterKernelParams& p, double nu);

// sin((omega_m - nu) t) / (omega_m - nu)
double sine_kernel(const FilterKernelParams& p, double nu);

// Integral of C~(nu) * filter_kernel over the whole real line.
QuadratureResult kernel_integral(const NoiseSpectrum& s, const FilterKernelParams& p,
                                 const QuadratureConfig& q = {});

// Integral of C~(nu) * sine_kernel over the whole real line; at t = 0 this
// is the t -> 0+ limit, pi times the white level.
QuadratureResult sine_kernel_integral(const NoiseSpectrum& s, const FilterKernelParams& p,
                                      const QuadratureConfig& q = {});

// 1 / (2 pi m omega_m hbar): prefactor for a force spectrum acting directly.
double direct_force_prefactor(double mass, double omega_m, Units units = Units::SI);

// n0 + background_rate t + prefactor * kernel_integral
PhononEstimate expected_phonons(const NoiseSpectrum& s, double prefactor, double background_rate,
                                double n0, const FilterKernelParams& p,
                                const QuadratureConfig& q = {});

// d<n>/dt of the spectral part: (prefactor / 2) * sine_kernel_integral
PhononEstimate heating_rate(const NoiseSpectrum& s, double prefactor, const FilterKernelParams& p,
                            const QuadratureConfig& q = {});

// Gamma(t) = -int_0^t C(y) cos(omega_m y) dy,  Theta(t) = int_0^t C(y) sin(omega_m y) dy / (m omega_m)
MomentCoefficients moment_coefficients(const SpectrumComponent& c, const FilterKernelParams& p,
                                       double mass, double rel_tol = 1e-10);

struct StepConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t samples = 33;        // output points including both ends
    std::size_t max_steps = 200000;  // between consecutive samples
};

struct Trajectory {
    std::vector<double> time;
    std::vector<double> phonons;
};

// Damped moment equation
//   dn/dt = (A/2) [ S1(t) - (S2(t) - S1(t)) n ],  S_i(t) = sine_kernel_integral(C_i)
// integrated with an adaptive Dormand-Prince stepper over [0, p.t].
Trajectory damped_evolution(const NoiseSpectrum& heating, const NoiseSpectrum& total,
                            double prefactor, const FilterKernelParams& p, double n0,
                            const StepConfig& step = {}, const QuadratureConfig& q = {});

}  // namespace phonospec
