// experiment.hpp - sweep plans and virtual measurement campaigns

#pragma once

#include "phonospec/scenario.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace phonospec {

enum class TimePolicy { Fixed, InverseFrequency };

struct SweepPoint {
    double omega_m = 0.0;
    double t = 0.0;
    int repetitions = 1;
};

// Points are ordered by omega_m, then t. With one reference time the
// frequencies are strictly increasing.
struct SweepPlan {
    std::vector<SweepPoint> points;
    TimePolicy policy = TimePolicy::Fixed;
};

// Log-spaced grid on [lo, hi]. For the inverse policy each reference time
// applies at lo and t scales as lo / omega_m.
SweepPlan plan_sweep(double lo, double hi, std::size_t n, TimePolicy policy,
                     std::span<const double> times, int repetitions = 1);
SweepPlan plan_sweep(double lo, double hi, std::size_t n, TimePolicy policy, double time,
                     int repetitions = 1);

struct NoiseModel {
    enum class Kind { Off, Thermal, Fixed };
    Kind kind = Kind::Off;
    double sigma = 0.0;  // fixed sigma_n
};

struct MeasurementRecord {
    double omega_m = 0.0;
    double t = 0.0;
    double n_true = 0.0;
    double n_obs = 0.0;
    double sigma_n = 0.0;
    int repetitions = 1;
    std::uint64_t stream = 0;  // RNG substream seed
    bool failed = false;
    std::string failure;
};

struct MeasurementDataset {
    std::string fingerprint;
    std::uint64_t seed = 0;
    double n0 = 0.0;
    std::vector<MeasurementRecord> records;
};

// Substream seed for a point, keyed on its (omega_m, t) so dropping or
// reordering other points leaves it alone.
std::uint64_t point_stream(std::uint64_t seed, const SweepPoint& point);

// Observed mean after the noise model; clamped at zero.
MeasurementRecord observe(const SweepPoint& point, double n_true, const NoiseModel& noise,
                          std::uint64_t stream);

// Evaluates every point of the plan (in parallel when threads > 1).
// A failing point is flagged and the sweep continues.
MeasurementDataset run_campaign(const Scenario& scenario, const SweepPlan& plan,
                                const NoiseModel& noise, std::uint64_t seed, unsigned threads = 1);

}  // namespace phonospec
