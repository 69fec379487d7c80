#include "phonospec/spectra.hpp"

#include "phonospec/errors.hpp"
#include "phonospec/faddeeva.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

namespace phonospec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void reject(std::size_t index, const SpectrumComponent& c, const std::string& why) {
    std::ostringstream msg;
    msg << "spectrum component " << index << " (" << kind_name(c) << "): " << why;
    throw ValidationError(msg.str());
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

double interpolate(const Tabulated& tab, double nu) {
    const auto& x = tab.nu;
    const auto& y = tab.value;
    if (nu < x.front() || nu > x.back()) {
        if (tab.extrapolation == Extrapolation::Zero) return 0.0;
        return nu < x.front() ? y.front() : y.back();
    }
    if (x.size() == 1) return y.front();
    auto it = std::upper_bound(x.begin(), x.end(), nu);
    std::size_t k = static_cast<std::size_t>(it - x.begin());
    if (k == x.size()) return y.back();
    const std::size_t j = k - 1;
    const double x0 = x[j], x1 = x[k], y0 = y[j], y1 = y[k];
    if (tab.interpolation == Interpolation::LogLog && x0 > 0.0 && y0 > 0.0 && y1 > 0.0) {
        const double s = std::log(nu / x0) / std::log(x1 / x0);
        return y0 * std::pow(y1 / y0, s);
    }
    const double s = (nu - x0) / (x1 - x0);
    return y0 + s * (y1 - y0);
}

}  // namespace

std::string_view kind_name(const SpectrumComponent& c) {
    return std::visit(overloaded{
                          [](const WhiteNoise&) { return std::string_view("white"); },
                          [](const GaussianPeak&) { return std::string_view("gaussian_peak"); },
                          [](const PowerLaw&) { return std::string_view("power_law"); },
                          [](const Tabulated&) { return std::string_view("tabulated"); },
                      },
                      c);
}

void validate(const SpectrumComponent& c, std::size_t index) {
    std::visit(overloaded{
                   [&](const WhiteNoise& w) {
                       if (!finite_nonneg(w.level)) reject(index, c, "level must be finite and >= 0");
                   },
                   [&](const GaussianPeak& g) {
                       if (!finite_nonneg(g.strength)) reject(index, c, "strength must be finite and >= 0");
                       if (!finite_nonneg(g.center)) reject(index, c, "center must be finite and >= 0");
                       if (!(std::isfinite(g.width) && g.width > 0.0)) reject(index, c, "width must be > 0");
                   },
                   [&](const PowerLaw& p) {
                       if (!finite_nonneg(p.prefactor)) reject(index, c, "prefactor must be finite and >= 0");
                       if (!std::isfinite(p.exponent)) reject(index, c, "exponent must be finite");
                       if (!(std::isfinite(p.cutoff) && p.cutoff > 0.0)) reject(index, c, "cutoff must be > 0");
                   },
                   [&](const Tabulated& t) {
                       if (t.nu.empty()) reject(index, c, "table is empty");
                       if (t.nu.size() != t.value.size()) reject(index, c, "frequency and value columns differ in length");
                       for (std::size_t k = 0; k < t.nu.size(); ++k) {
                           if (!finite_nonneg(t.nu[k])) reject(index, c, "frequencies must be finite and >= 0");
                           if (!finite_nonneg(t.value[k])) reject(index, c, "values must be finite and >= 0");
                           if (k > 0 && !(t.nu[k] > t.nu[k - 1]))
                               reject(index, c, "frequencies must be strictly increasing (row " +
                                                    std::to_string(k) + ")");
                       }
                   },
               },
               c);
}

double evaluate(const SpectrumComponent& c, double nu) {
    const double a = std::abs(nu);
    return std::visit(overloaded{
                          [](const WhiteNoise& w) { return w.level; },
                          [a](const GaussianPeak& g) {
                              const double u = (a - g.center) / g.width;
                              return g.strength * std::exp(-0.5 * u * u);
                          },
                          [a](const PowerLaw& p) {
                              return p.prefactor * std::pow(std::max(a, p.cutoff), -p.exponent);
                          },
                          [a](const Tabulated& t) { return interpolate(t, a); },
                      },
                      c);
}

std::vector<SpectralFeature> features(const SpectrumComponent& c) {
    return std::visit(
        overloaded{
            [](const WhiteNoise&) { return std::vector<SpectralFeature>{}; },
            [](const GaussianPeak& g) {
                SpectralFeature f;
                f.lo = std::max(0.0, g.center - 10.0 * g.width);
                f.hi = g.center + 10.0 * g.width;
                f.breakpoints.push_back(g.center);
                for (double k : {1.0, 2.0, 4.0, 8.0}) {
                    f.breakpoints.push_back(g.center + k * g.width);
                    if (g.center - k * g.width > 0.0) f.breakpoints.push_back(g.center - k * g.width);
                }
                if (f.lo == 0.0) f.breakpoints.push_back(0.0);
                std::sort(f.breakpoints.begin(), f.breakpoints.end());
                return std::vector<SpectralFeature>{f};
            },
            [](const PowerLaw& p) {
                SpectralFeature f;
                f.lo = 0.0;
                f.hi = 4.0 * p.cutoff;
                f.breakpoints = {0.0, p.cutoff};
                return std::vector<SpectralFeature>{f};
            },
            [](const Tabulated& t) {
                SpectralFeature f;
                f.lo = t.nu.front();
                f.hi = t.nu.back();
                f.breakpoints = t.nu;
                if (t.nu.front() > 0.0) f.breakpoints.insert(f.breakpoints.begin(), 0.0);
                return std::vector<SpectralFeature>{f};
            },
        },
        c);
}

NoiseSpectrum::NoiseSpectrum(std::vector<SpectrumComponent> components)
    : components_(std::move(components)) {
    for (std::size_t i = 0; i < components_.size(); ++i) validate(components_[i], i);
}

double NoiseSpectrum::operator()(double nu) const {
    double sum = 0.0;
    for (const auto& c : components_) sum += evaluate(c, nu);
    return sum;
}

std::vector<SpectralFeature> NoiseSpectrum::features() const {
    std::vector<SpectralFeature> out;
    for (const auto& c : components_) {
        auto f = phonospec::features(c);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

double NoiseSpectrum::white_level() const noexcept {
    double sum = 0.0;
    for (const auto& c : components_)
        if (const auto* w = std::get_if<WhiteNoise>(&c)) sum += w->level;
    return sum;
}

NoiseSpectrum build_spectrum(std::vector<SpectrumComponent> components) {
    return NoiseSpectrum(std::move(components));
}

QuadratureResult total_weight(const NoiseSpectrum& s, double lo, double hi, double rel_tol) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
        throw ValidationError("total_weight: band must satisfy lo < hi");
    std::vector<double> cuts;
    for (const auto& f : s.features()) {
        for (double b : f.breakpoints) {
            cuts.push_back(b);
            cuts.push_back(-b);
        }
        for (double b : {f.lo, f.hi}) {
            cuts.push_back(b);
            cuts.push_back(-b);
        }
    }
    AdaptiveOptions opt;
    opt.rel_tol = rel_tol;
    PanelIntegral p;
    const auto id = p.add_integrand([&s](double nu) { return s(nu); });
    p.add_range(id, lo, hi, cuts, 4);
    return p.integrate(opt);
}

double gaussian_autocorrelation(const GaussianPeak& g, double y) {
    const double pref = g.strength * g.width / std::sqrt(2.0 * constants::pi);
    const double b = g.width * y / std::sqrt(2.0);
    const double direct = std::exp(-b * b);
    if (g.center == 0.0) return pref * direct;
    // Even extension: Gaussians at +center and -center, minus the part of
    // each that crosses zero frequency, expressed through w(z).
    const double a = g.center / (g.width * std::sqrt(2.0));
    double correction = 0.0;
    if (a < 27.0) correction = std::exp(-a * a) * faddeeva_w({-b, a}).real();
    return pref * (2.0 * direct * std::cos(g.center * y) - correction);
}

Autocorrelation autocorrelation(const SpectrumComponent& c, double y) {
    if (const auto* w = std::get_if<WhiteNoise>(&c)) return DeltaCorrelation{w->level};
    if (const auto* g = std::get_if<GaussianPeak>(&c)) return gaussian_autocorrelation(*g, y);
    throw CapabilityError("autocorrelation: no closed form for " + std::string(kind_name(c)) +
                          " components");
}

Tabulated read_tabulated_csv(std::istream& in, FrequencyUnit unit, Interpolation interp,
                             Extrapolation extrap) {
    Tabulated t;
    t.interpolation = interp;
    t.extrapolation = extrap;
    std::string line;
    std::size_t row = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++row;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream fields(line);
        double f = 0.0, v = 0.0;
        if (!(fields >> f >> v)) {
            if (first_data_line) {
                first_data_line = false;
                continue;
            }
            throw ValidationError("tabulated CSV: cannot parse row " + std::to_string(row));
        }
        first_data_line = false;
        t.nu.push_back(to_rad_per_s(f, unit));
        t.value.push_back(v);
    }
    validate(SpectrumComponent{t}, 0);
    return t;
}

}  // namespace phonospec
