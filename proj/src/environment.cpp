#include "phonospec/environment.hpp"

#include "phonospec/constants.hpp"
#include "phonospec/errors.hpp"

#include <cmath>

namespace phonospec {

using namespace constants;

void validate(const GasParams& g) {
    if (!(std::isfinite(g.pressure) && g.pressure >= 0.0)) throw ValidationError("gas: pressure must be >= 0");
    if (!(std::isfinite(g.temperature) && g.temperature > 0.0)) throw ValidationError("gas: temperature must be > 0");
    if (!(std::isfinite(g.molecular_mass) && g.molecular_mass > 0.0))
        throw ValidationError("gas: molecular mass must be > 0");
}

std::optional<double> gas_species_mass(std::string_view name) {
    if (name == "H2") return 2.01588 * amu;
    if (name == "He") return 4.002602 * amu;
    if (name == "N2") return 28.0134 * amu;
    return std::nullopt;
}

double gas_diffusion(const GasParams& gas, double radius) {
    validate(gas);
    if (!(radius >= 0.0)) throw ValidationError("gas: radius must be >= 0");
    return 6.0 * pi * gas.pressure * radius * radius *
           std::sqrt(3.0 * gas.molecular_mass * k_B * gas.temperature) / (hbar * hbar);
}

double gas_heating_rate(double diffusion, double mass, double omega_m) {
    if (!(mass > 0.0 && omega_m > 0.0)) throw ValidationError("gas heating: mass and omega_m must be > 0");
    return hbar * diffusion / (2.0 * mass * omega_m);
}

double blackbody_heating(double temperature, double density, double im_eps, double omega_m) {
    if (!(temperature >= 0.0 && density > 0.0 && im_eps >= 0.0 && omega_m > 0.0))
        throw ValidationError("blackbody: inputs must be positive");
    const double kT = k_B * temperature;
    const double kT3 = kT * kT * kT;
    const double ch = c_light * hbar;
    return 2.0 * std::pow(pi, 4) / 63.0 * (kT3 * kT3) / (std::pow(ch, 5) * density * omega_m) * im_eps;
}

void validate(const EFieldNoiseModel& m) {
    if (!(std::isfinite(m.scale) && m.scale >= 0.0)) throw ValidationError("efield: g_E must be >= 0");
    if (!(std::isfinite(m.distance) && m.distance > 0.0)) throw ValidationError("efield: distance must be > 0");
    if (!(std::isfinite(m.temperature) && m.temperature > 0.0))
        throw ValidationError("efield: electrode temperature must be > 0");
    if (!std::isfinite(m.freq_exponent) || !std::isfinite(m.distance_exponent) ||
        !std::isfinite(m.temperature_exponent))
        throw ValidationError("efield: exponents must be finite");
}

namespace {

double geometric_factor(const EFieldNoiseModel& m) {
    return std::pow(m.distance, -m.distance_exponent) * std::pow(m.temperature, m.temperature_exponent);
}

}  // namespace

double efield_psd(const EFieldNoiseModel& model, double omega) {
    validate(model);
    if (!(omega > 0.0)) throw DomainError("efield psd: omega must be > 0");
    const double shape = model.structure ? (*model.structure)(omega) : std::pow(omega, -model.freq_exponent);
    return model.scale * shape * geometric_factor(model);
}

double efield_heating(double charge, double mass, double omega_m, double psd) {
    if (!(mass > 0.0 && omega_m > 0.0)) throw ValidationError("efield heating: mass and omega_m must be > 0");
    return charge * charge * psd / (4.0 * mass * hbar * omega_m);
}

double coupling_constant(const EFieldNoiseModel& model, double charge) {
    validate(model);
    return charge * charge * geometric_factor(model) * model.scale;
}

double calibrate_gE(const EFieldNoiseModel& reference, double charge, double mass, double omega_m,
                    double rate) {
    EFieldNoiseModel unit = reference;
    unit.scale = 1.0;
    const double per_unit = efield_heating(charge, mass, omega_m, efield_psd(unit, omega_m));
    if (!(per_unit > 0.0)) throw CalibrationError("calibrate_gE: reference scenario produces no heating");
    if (!(rate >= 0.0)) throw CalibrationError("calibrate_gE: target rate must be >= 0");
    return rate / per_unit;
}

std::string_view channel_name(CouplingChannel c) {
    switch (c) {
        case CouplingChannel::ElectricField: return "efield";
        case CouplingChannel::DirectForce: return "force";
        case CouplingChannel::Csl: return "csl";
    }
    return "unknown";
}

BackgroundBudget background_budget(const Environment& env, const Particle& particle,
                                   double omega_m, CouplingChannel probed) {
    if (!(omega_m > 0.0)) throw ValidationError("background budget: omega_m must be > 0");
    const double m = particle.mass();
    BackgroundBudget b;
    if (env.gas) b.gas = gas_heating_rate(gas_diffusion(*env.gas, particle.radius), m, omega_m);
    if (env.blackbody) {
        const auto& bb = *env.blackbody;
        b.blackbody = blackbody_heating(bb.temperature, bb.density.value_or(particle.density),
                                        bb.im_permittivity, omega_m);
    }
    if (env.efield && probed != CouplingChannel::ElectricField)
        b.efield = efield_heating(particle.charge(), m, omega_m, efield_psd(*env.efield, omega_m));
    b.total = b.gas + b.blackbody + b.efield;
    b.regime_ok = omega_m < two_pi * 1e3 || b.total <= 100.0;
    return b;
}

}  // namespace phonospec
