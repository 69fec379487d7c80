// reconstruct.hpp - peak-approximation inversion and ringing diagnostics

#pragma once

#include "phonospec/experiment.hpp"
#include "phonospec/scenario.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace phonospec {

struct EstimatePoint {
    double omega_m = 0.0;
    double t = 0.0;
    double c_hat = 0.0;       // may be negative; never clamped
    double resolution = 0.0;  // half-width 2 pi / t
    double sigma_c = 0.0;
    bool failed = false;
};

struct SpectrumEstimate {
    std::vector<EstimatePoint> points;
    double calibration = 0.0;  // k used for the inversion
};

double resolution_bandwidth(double t);

// C = 4 m omega_m hbar (n - n0 - D'_p t) / (k t)
EstimatePoint reconstruct_point(const MeasurementRecord& r, double n0, double background_rate,
                                double calibration, double mass, Units units = Units::SI);

enum class Baseline {
    Modeled,  // n0 from the dataset
    Fitted    // per-frequency intercept of a straight line through n(t); needs >= 2 times
};

// Throws IntegrityError when the dataset was produced from a different scenario.
SpectrumEstimate reconstruct_sweep(const MeasurementDataset& ds, const Scenario& scenario,
                                   Baseline baseline = Baseline::Modeled);

struct RingingOptions {
    double band_lo = -std::numeric_limits<double>::infinity();
    double band_hi = std::numeric_limits<double>::infinity();
    double ratio_lo = 0.8;
    double ratio_hi = 1.25;
    std::size_t min_crossings = 4;
    double min_relative_amplitude = 1e-3;  // rms residual vs largest |C| in band
};

struct RingingReport {
    bool detected = false;
    double spacing = 0.0;           // rad/s, periodogram peak of the detrended residual
    double expected_spacing = 0.0;  // 2 pi / t
    double match_ratio = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    std::size_t points = 0;
    std::size_t crossings = 0;
    double relative_amplitude = 0.0;
};

// Uses the estimate points taken at time t inside the band. Throws
// CapabilityError unless there are >= 8 such points spaced below pi / (2t).
RingingReport detect_ringing(const SpectrumEstimate& estimate, double t,
                             const RingingOptions& opt = {});

}  // namespace phonospec
