// trap.hpp - charged nanosphere and Paul-trap secular frequency

#pragma once

#include "phonospec/constants.hpp"

#include <string>

namespace phonospec {

double sphere_mass(double radius, double density);

struct Particle {
    double radius = 50e-9;    // m
    double density = 2300.0;  // kg/m^3
    long charge_count = 1000;

    double mass() const { return sphere_mass(radius, density); }
    double charge() const;    // C
};

void validate(const Particle& p);

struct TrapConfig {
    double voltage = 0.0;    // V, AC amplitude; DC offset is zero
    double geometry = 0.5;   // beta_geom in (0, 1]
    double drive_frequency = constants::two_pi * 1e4;  // rad/s
    double endcap_distance = 0.8e-3;                   // m
};

// Checks everything except the voltage.
void validate_geometry(const TrapConfig& trap);

// V0 beta Q / (sqrt(2) m Omega_d d^2)
double mechanical_frequency(const TrapConfig& trap, const Particle& particle);

// Exact inverse of mechanical_frequency; trap.voltage is ignored.
double voltage_for_frequency(const TrapConfig& trap, const Particle& particle, double omega_target);

struct RangeCheck {
    bool ok = true;
    std::string message;
};

// Soft check against the 1e2..1e6 Hz operating window.
RangeCheck validate_operating_range(double omega_m);

}  // namespace phonospec
