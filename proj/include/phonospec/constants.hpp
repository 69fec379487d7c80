// constants.hpp - physical constants and the unit convention switch

#pragma once

#include <numbers>

namespace phonospec {

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double k_B = 1.380649e-23;              // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double c_light = 299792458.0;           // m/s
inline constexpr double nucleon_mass = 1.6726e-27;       // kg, CSL reference mass
inline constexpr double amu = 1.66053906660e-27;         // kg
}  // namespace constants

// SI keeps hbar explicit in every prefactor; Natural sets hbar = 1.
enum class Units { SI, Natural };

constexpr double reduced_planck(Units u) noexcept {
    return u == Units::SI ? constants::hbar : 1.0;
}

// User-facing frequency unit. Internally everything is rad/s.
enum class FrequencyUnit { Hertz, RadPerSecond };

constexpr double to_rad_per_s(double value, FrequencyUnit unit) noexcept {
    return unit == FrequencyUnit::Hertz ? constants::two_pi * value : value;
}

}  // namespace phonospec
