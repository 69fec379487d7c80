#include "phonospec/trap.hpp"

#include "phonospec/constants.hpp"
#include "phonospec/errors.hpp"

#include <cmath>
#include <sstream>

namespace phonospec {

double sphere_mass(double radius, double density) {
    if (!(std::isfinite(radius) && radius >= 0.0)) throw ValidationError("sphere mass: radius must be >= 0");
    if (!(std::isfinite(density) && density > 0.0)) throw ValidationError("sphere mass: density must be > 0");
    return 4.0 / 3.0 * constants::pi * radius * radius * radius * density;
}

double Particle::charge() const {
    return static_cast<double>(charge_count) * constants::elementary_charge;
}

void validate(const Particle& p) {
    sphere_mass(p.radius, p.density);
    if (p.charge_count < 0) throw ValidationError("particle: charge count must be >= 0");
}

void validate_geometry(const TrapConfig& trap) {
    if (!(trap.geometry > 0.0 && trap.geometry <= 1.0))
        throw ValidationError("trap: geometry factor must lie in (0, 1]");
    if (!(std::isfinite(trap.drive_frequency) && trap.drive_frequency > 0.0))
        throw ValidationError("trap: drive frequency must be > 0");
    if (!(std::isfinite(trap.endcap_distance) && trap.endcap_distance > 0.0))
        throw ValidationError("trap: endcap distance must be > 0");
}

namespace {

// omega_m / V0
double frequency_per_volt(const TrapConfig& trap, const Particle& particle) {
    validate_geometry(trap);
    validate(particle);
    const double m = particle.mass();
    if (m == 0.0) throw ValidationError("trap: particle mass is zero, frequency undefined");
    if (particle.charge_count == 0) throw ValidationError("trap: particle is uncharged, frequency undefined");
    const double d = trap.endcap_distance;
    return trap.geometry * particle.charge() / (std::sqrt(2.0) * m * trap.drive_frequency * d * d);
}

}  // namespace

double mechanical_frequency(const TrapConfig& trap, const Particle& particle) {
    if (!(std::isfinite(trap.voltage) && trap.voltage >= 0.0))
        throw ValidationError("trap: voltage must be >= 0");
    return trap.voltage * frequency_per_volt(trap, particle);
}

double voltage_for_frequency(const TrapConfig& trap, const Particle& particle, double omega_target) {
    if (!(std::isfinite(omega_target) && omega_target >= 0.0))
        throw ValidationError("trap: target frequency must be >= 0");
    return omega_target / frequency_per_volt(trap, particle);
}

RangeCheck validate_operating_range(double omega_m) {
    constexpr double lo = constants::two_pi * 1e2;
    constexpr double hi = constants::two_pi * 1e6;
    if (omega_m >= lo && omega_m <= hi) return {};
    std::ostringstream msg;
    msg << "omega_m = " << omega_m << " rad/s (" << omega_m / constants::two_pi
        << " Hz) is outside the trap operating range 1e2..1e6 Hz";
    return {false, msg.str()};
}

}  // namespace phonospec
