// environment.hpp - Markovian background heating channels and the E-field coupling

#pragma once

#include "phonospec/spectra.hpp"
#include "phonospec/trap.hpp"

#include <optional>
#include <string_view>

namespace phonospec {

struct GasParams {
    double pressure = 1e-9;       // Pa
    double temperature = 4.0;     // K
    double molecular_mass = 0.0;  // kg, m_g
};

void validate(const GasParams& g);

// Molecular masses for the documented presets "H2", "He", "N2".
std::optional<double> gas_species_mass(std::string_view name);

// D_g = 6 pi P R^2 sqrt(3 m_g k_B T) / hbar^2
double gas_diffusion(const GasParams& gas, double radius);

// D'_g = hbar D_g / (2 m omega_m)
double gas_heating_rate(double diffusion, double mass, double omega_m);

// D'_bb = (2 pi^4 / 63) (k_B T)^6 / (c^5 hbar^5 rho omega) * im_eps
double blackbody_heating(double temperature, double density, double im_eps, double omega_m);

struct BlackbodyParams {
    double temperature = 4.0;
    double im_permittivity = 0.1;      // Im[(eps - 1) / (eps + 2)]
    std::optional<double> density;     // defaults to the particle density
};

// S_E = g_E omega^-alpha d^-beta T^chi. With `structure` set, the spectrum
// replaces omega^-alpha. The temperature exponent is also written gamma.
struct EFieldNoiseModel {
    double scale = 1.55e-17;           // g_E
    double freq_exponent = 1.0;        // alpha
    double distance_exponent = 3.0;    // beta
    double temperature_exponent = 0.57;  // chi
    double distance = 0.8e-3;          // m
    double temperature = 4.0;          // K
    std::optional<NoiseSpectrum> structure;
};

void validate(const EFieldNoiseModel& m);

double efield_psd(const EFieldNoiseModel& model, double omega);

// D'_E = Q^2 S_E / (4 m hbar omega_m)
double efield_heating(double charge, double mass, double omega_m, double psd);

// k_E = Q^2 d^-beta T^chi g_E
double coupling_constant(const EFieldNoiseModel& model, double charge);

// g_E that makes the reference model (its own scale ignored) produce
// `rate` phonon/s for the given particle at omega_m.
double calibrate_gE(const EFieldNoiseModel& reference, double charge, double mass, double omega_m,
                    double rate);

enum class CouplingChannel { ElectricField, DirectForce, Csl };

std::string_view channel_name(CouplingChannel c);

struct Environment {
    std::optional<GasParams> gas;
    std::optional<BlackbodyParams> blackbody;
    std::optional<EFieldNoiseModel> efield;
    double initial_phonons = 10.0;
};

struct BackgroundBudget {
    double gas = 0.0;
    double blackbody = 0.0;
    double efield = 0.0;
    double total = 0.0;         // D'_p, channels not under reconstruction
    bool regime_ok = true;      // D'_p <= 100 phonon/s when omega_m >= 2 pi 1e3
};

// The E-field channel is left out of the total when it is the one probed.
BackgroundBudget background_budget(const Environment& env, const Particle& particle,
                                   double omega_m, CouplingChannel probed);

}  // namespace phonospec
