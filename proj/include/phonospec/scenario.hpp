// scenario.hpp - the complete physical setup a campaign runs against

#pragma once

#include "phonospec/constants.hpp"
#include "phonospec/csl.hpp"
#include "phonospec/environment.hpp"
#include "phonospec/kernel.hpp"
#include "phonospec/spectra.hpp"
#include "phonospec/trap.hpp"

#include <optional>
#include <string>

namespace phonospec {

struct Scenario {
    Particle particle;
    TrapConfig trap;
    Environment environment;
    CouplingChannel channel = CouplingChannel::ElectricField;
    NoiseSpectrum spectrum;          // spectrum under test
    std::optional<CslParams> csl;    // total mass is taken from the particle
    QuadratureConfig quadrature;
    Units units = Units::SI;
    std::string fingerprint;         // of the generating config, if any
};

void validate(const Scenario& s);

// Coupling k of the probed channel: k_E for the E-field, 1 for a direct
// force, eta_z hbar^2 for CSL. The forward prefactor is k / (2 pi m omega_m hbar).
double channel_calibration(const Scenario& s);
double channel_prefactor(const Scenario& s, double omega_m);

BackgroundBudget background_budget(const Scenario& s, double omega_m);

PhononEstimate expected_phonons(const Scenario& s, double omega_m, double t);

// Levitated 50 nm silica sphere, Q = 1000 e, 1e-9 Pa hydrogen at 4 K,
// blackbody at 4 K, Ohmic E-field noise, E-field channel probed, n0 = 10.
Scenario default_scenario();

}  // namespace phonospec
