#include "phonospec/scenario.hpp"

#include "phonospec/errors.hpp"

#include <cmath>

namespace phonospec {

void validate(const Scenario& s) {
    validate(s.particle);
    validate_geometry(s.trap);
    validate(s.quadrature);
    if (s.particle.mass() <= 0.0) throw ValidationError("scenario: particle mass must be > 0");
    if (s.environment.gas) validate(*s.environment.gas);
    if (s.environment.efield) validate(*s.environment.efield);
    if (!(s.environment.initial_phonons >= 0.0)) throw ValidationError("scenario: n0 must be >= 0");
    if (s.channel == CouplingChannel::ElectricField && !s.environment.efield)
        throw ValidationError("scenario: the E-field channel needs an E-field model");
    if (s.channel == CouplingChannel::Csl) {
        if (!s.csl) throw ValidationError("scenario: the CSL channel needs CSL parameters");
        validate(*s.csl);
    }
}

double channel_calibration(const Scenario& s) {
    switch (s.channel) {
        case CouplingChannel::ElectricField:
            if (!s.environment.efield) throw ValidationError("scenario: no E-field model");
            return coupling_constant(*s.environment.efield, s.particle.charge());
        case CouplingChannel::DirectForce:
            return 1.0;
        case CouplingChannel::Csl: {
            if (!s.csl) throw ValidationError("scenario: no CSL parameters");
            CslParams p = *s.csl;
            p.total_mass = s.particle.mass();
            const double hb = reduced_planck(s.units);
            return eta_z(p, s.particle.radius) * hb * hb;
        }
    }
    throw ValidationError("scenario: unknown channel");
}

double channel_prefactor(const Scenario& s, double omega_m) {
    return channel_calibration(s) * direct_force_prefactor(s.particle.mass(), omega_m, s.units);
}

BackgroundBudget background_budget(const Scenario& s, double omega_m) {
    return background_budget(s.environment, s.particle, omega_m, s.channel);
}

PhononEstimate expected_phonons(const Scenario& s, double omega_m, double t) {
    return expected_phonons(s.spectrum, channel_prefactor(s, omega_m), background_budget(s, omega_m).total,
                            s.environment.initial_phonons, {omega_m, t}, s.quadrature);
}

Scenario default_scenario() {
    Scenario s;
    s.particle = Particle{50e-9, 2300.0, 1000};
    s.trap = TrapConfig{};
    s.trap.voltage = 1000.0;
    s.environment.gas = GasParams{1e-9, 4.0, *gas_species_mass("H2")};
    s.environment.blackbody = BlackbodyParams{4.0, 0.1, std::nullopt};
    s.environment.efield = EFieldNoiseModel{};
    s.environment.initial_phonons = 10.0;
    s.channel = CouplingChannel::ElectricField;
    return s;
}

}  // namespace phonospec
