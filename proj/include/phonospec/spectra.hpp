// spectra.hpp - even two-sided noise spectra built from analytic and tabulated pieces

#pragma once

#include "phonospec/constants.hpp"
#include "phonospec/quadrature.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace phonospec {

struct WhiteNoise {
    double level = 0.0;  // D_p
    bool operator==(const WhiteNoise&) const = default;
};

// eta * exp(-(nu - center)^2 / (2 width^2)) on nu >= 0
struct GaussianPeak {
    double strength = 0.0;
    double center = 0.0;
    double width = 1.0;
    bool operator==(const GaussianPeak&) const = default;
};

// prefactor * nu^-exponent, held constant below the cutoff
struct PowerLaw {
    double prefactor = 0.0;
    double exponent = 1.0;
    double cutoff = 1.0;
    bool operator==(const PowerLaw&) const = default;
};

enum class Interpolation { Linear, LogLog };
enum class Extrapolation { ConstantEdge, Zero };

struct Tabulated {
    std::vector<double> nu;
    std::vector<double> value;
    Interpolation interpolation = Interpolation::LogLog;
    Extrapolation extrapolation = Extrapolation::ConstantEdge;
    bool operator==(const Tabulated&) const = default;
};

using SpectrumComponent = std::variant<WhiteNoise, GaussianPeak, PowerLaw, Tabulated>;

std::string_view kind_name(const SpectrumComponent& c);

// Throws ValidationError naming the component index and kind.
void validate(const SpectrumComponent& c, std::size_t index = 0);

// One-sided value at |nu|.
double evaluate(const SpectrumComponent& c, double nu);

// Region on nu >= 0 where a component has structure worth resolving.
struct SpectralFeature {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> breakpoints;
};

std::vector<SpectralFeature> features(const SpectrumComponent& c);

class NoiseSpectrum {
public:
    NoiseSpectrum() = default;  // identically zero
    explicit NoiseSpectrum(std::vector<SpectrumComponent> components);

    double operator()(double nu) const;
    std::span<const SpectrumComponent> components() const noexcept { return components_; }
    bool empty() const noexcept { return components_.empty(); }
    std::vector<SpectralFeature> features() const;

    // Sum of white levels; the value the spectrum tends to far from all features.
    double white_level() const noexcept;

private:
    std::vector<SpectrumComponent> components_;
};

NoiseSpectrum build_spectrum(std::vector<SpectrumComponent> components);

inline double evaluate(const NoiseSpectrum& s, double nu) { return s(nu); }

// Integral of C over [lo, hi] (either sign), relative tolerance rel_tol.
QuadratureResult total_weight(const NoiseSpectrum& s, double lo, double hi, double rel_tol = 1e-8);

// White noise has a delta autocorrelation: weight * delta(y).
struct DeltaCorrelation {
    double weight = 0.0;
};

using Autocorrelation = std::variant<DeltaCorrelation, double>;

// C(y) = (1/2pi) * integral of C~(nu) exp(-i nu y) over the real line.
// Only white and Gaussian components have closed forms; others throw CapabilityError.
Autocorrelation autocorrelation(const SpectrumComponent& c, double y);

// Exact transform of the even extension of a Gaussian peak.
double gaussian_autocorrelation(const GaussianPeak& g, double y);

// Two-column CSV (frequency, value); lines starting with '#' are skipped,
// as is a non-numeric first line.
Tabulated read_tabulated_csv(std::istream& in, FrequencyUnit unit,
                             Interpolation interp = Interpolation::LogLog,
                             Extrapolation extrap = Extrapolation::ConstantEdge);

}  // namespace phonospec
