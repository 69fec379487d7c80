// config.hpp - scenario files: parsing, validation, serialization, fingerprints

#pragma once

#include "phonospec/constants.hpp"
#include "phonospec/experiment.hpp"
#include "phonospec/reconstruct.hpp"
#include "phonospec/scenario.hpp"
#include "phonospec/spectra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phonospec {

// Frequencies (centers, widths, cutoffs, table abscissae, sweep range, trap
// frequencies) are written in `frequency_unit`; everything else is SI.
struct SpectrumEntry {
    SpectrumComponent component;
    std::string file;  // tabulated only: CSV loaded when the scenario is built
    bool operator==(const SpectrumEntry&) const = default;
};

struct GasConfig {
    bool enabled = true;
    double pressure = 1e-9;
    double temperature = 4.0;
    double molecular_mass = 0.0;
    std::string species;  // preset name when m_g was given by name
    bool operator==(const GasConfig&) const = default;
};

struct BlackbodyConfig {
    bool enabled = true;
    double temperature = 4.0;
    double im_permittivity = 0.1;
    std::optional<double> density;
    bool operator==(const BlackbodyConfig&) const = default;
};

struct EFieldConfig {
    bool enabled = true;
    double g_E = 1.55e-17;
    double alpha = 1.0;
    double beta = 3.0;
    double chi = 0.57;
    double distance = 0.8e-3;
    double temperature = 4.0;
    bool operator==(const EFieldConfig&) const = default;
};

struct CslConfig {
    double lambda = 0.0;
    double r_C = 1e-7;
    double m0 = constants::nucleon_mass;
    bool operator==(const CslConfig&) const = default;
};

struct SweepConfig {
    double lo = 1e2;
    double hi = 1e6;
    std::size_t points = 200;
    std::vector<double> times{1e-2};
    TimePolicy policy = TimePolicy::Fixed;
    int repetitions = 1;
    bool operator==(const SweepConfig&) const = default;
};

struct ScenarioConfig {
    FrequencyUnit frequency_unit = FrequencyUnit::Hertz;
    double radius = 50e-9;
    double density = 2300.0;
    long charge_count = 1000;
    std::optional<double> voltage;           // either this
    std::optional<double> target_frequency;  // or this
    double geometry = 0.5;
    double drive_frequency = 1e4;
    double endcap_distance = 0.8e-3;
    double initial_phonons = 10.0;
    std::optional<GasConfig> gas;
    std::optional<BlackbodyConfig> blackbody;
    std::optional<EFieldConfig> efield;
    CouplingChannel channel = CouplingChannel::ElectricField;
    std::vector<SpectrumEntry> spectrum;
    std::optional<CslConfig> csl;
    SweepConfig sweep;
    NoiseModel::Kind noise = NoiseModel::Kind::Off;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    QuadratureConfig quadrature;
    Baseline baseline = Baseline::Modeled;
    std::string base_dir;  // where relative file paths resolve; not serialized

    bool operator==(const ScenarioConfig& o) const;
};

// Throws ConfigError naming the offending path, e.g. "environment.gas.m_g".
ScenarioConfig parse_config(const std::string& text, const std::string& base_dir = ".");
ScenarioConfig load_config(const std::string& path);

std::string serialize_config(const ScenarioConfig& c);

// The default_scenario() setup as a config document.
ScenarioConfig default_config();

// FNV-1a 64 of the canonical serialization without the seed; tabulated
// files are folded in by content. 16 hex digits.
std::string fingerprint(const ScenarioConfig& c);

Scenario build_scenario(const ScenarioConfig& c);
SweepPlan build_plan(const ScenarioConfig& c);
NoiseModel build_noise(const ScenarioConfig& c);

}  // namespace phonospec
