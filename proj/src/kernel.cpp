#include "phonospec/kernel.hpp"

#include "phonospec/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace phonospec {

namespace {

using constants::pi;
using constants::two_pi;

enum class KernelKind { Sinc2, Sine };

// x = nu - omega_m throughout; both kernels are even in x.
double sinc2(double x, double t) {
    const double xt = x * t;
    if (std::abs(xt) < 1e-6) return 0.25 * t * t * (1.0 - xt * xt / 12.0);
    const double s = std::sin(0.5 * xt);
    return s * s / (x * x);
}

double sinx(double x, double t) {
    const double xt = x * t;
    if (std::abs(xt) < 1e-6) return t * (1.0 - xt * xt / 6.0);
    return std::sin(xt) / x;
}

// Integral over [X, inf) of (sin^2(tx/2) - 1/2) / x^2 at a kernel zero, z = tX.
double sinc2_tail(double X, double z) {
    const double iz2 = 1.0 / (z * z);
    return -(iz2 * (1.0 - iz2 * (12.0 - iz2 * (360.0 - iz2 * 20160.0)))) / X;
}
double sinc2_tail_error(double X, double z) { return 1814400.0 / std::pow(z, 10) / X; }

// Integral over [X, inf) of sin(tx) / x at a kernel zero.
double sine_tail(double z) {
    const double iz2 = 1.0 / (z * z);
    return (1.0 - iz2 * (2.0 - iz2 * (24.0 - iz2 * (720.0 - iz2 * 40320.0)))) / z;
}
double sine_tail_error(double z) { return 3628800.0 / std::pow(z, 11); }

struct Window {
    double lo, hi;
};

QuadratureResult filtered_integral(const NoiseSpectrum& s, const FilterKernelParams& p,
                                   const QuadratureConfig& q, KernelKind kind) {
    validate(p);
    validate(q);
    if (s.empty()) return {};
    if (p.t == 0.0) {
        if (kind == KernelKind::Sinc2) return {};
        return {pi * s.white_level(), 0.0, 0};
    }

    const double t = p.t;
    const double wm = p.omega_m;
    const double P = two_pi / t;
    auto C = [&s, wm](double x) { return s(wm + x); };

    // Core half-width: the neglected asymptotic remainder at the core edge,
    // relative to the white-noise value, stays below tail_fraction * rel_tol.
    const double target = q.tail_fraction * q.rel_tol;
    double zmin = kind == KernelKind::Sinc2 ? std::pow(2.0 * 1814400.0 / (pi * target), 1.0 / 11.0)
                                            : std::pow(3628800.0 / (pi * target), 1.0 / 11.0);
    const double n_core = std::max<double>(q.min_core_periods, std::ceil(zmin / two_pi));

    std::vector<Window> exact{{-n_core * P, n_core * P}};
    std::vector<double> bps;
    for (const auto& f : s.features()) {
        for (int sign : {+1, -1}) {
            double a = sign > 0 ? f.lo - wm : -f.hi - wm;
            double b = sign > 0 ? f.hi - wm : -f.lo - wm;
            a = std::floor(a / P) * P;
            b = std::ceil(b / P) * P;
            if (b <= a) b = a + P;
            if ((b - a) / P <= q.max_exact_periods) exact.push_back({a, b});
        }
        for (double nu : f.breakpoints) {
            bps.push_back(nu - wm);
            bps.push_back(-nu - wm);
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    std::sort(exact.begin(), exact.end(), [](const Window& x, const Window& y) { return x.lo < y.lo; });
    std::vector<Window> merged;
    for (const Window& w : exact) {
        if (!merged.empty() && w.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, w.hi);
        else
            merged.push_back(w);
    }

    PanelIntegral integral;
    const std::size_t exact_id =
        kind == KernelKind::Sinc2
            ? integral.add_integrand([C, t](double x) { return C(x) * sinc2(x, t); })
            : integral.add_integrand([C, t](double x) { return C(x) * sinx(x, t); });

    const double pieces = std::ceil(q.nodes_per_period / 15.0);
    const double h = P / pieces;
    std::vector<double> cuts;
    for (const Window& w : merged) {
        cuts.clear();
        const auto n = static_cast<long long>(std::llround((w.hi - w.lo) / h));
        for (long long k = 0; k <= n; ++k) cuts.push_back(w.lo + static_cast<double>(k) * h);
        cuts.back() = w.hi;
        auto lo_it = std::upper_bound(bps.begin(), bps.end(), w.lo);
        auto hi_it = std::lower_bound(bps.begin(), bps.end(), w.hi);
        cuts.insert(cuts.end(), lo_it, hi_it);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i + 1] - cuts[i] > 1e-12 * h) integral.add_panel(exact_id, cuts[i], cuts[i + 1]);
    }

    // Asymptotic corrections where the oscillating kernel meets its average.
    auto correct = [&](double xe, int side) {
        const double X = std::abs(xe);
        const double z = t * X;
        const double sign = (side * (xe > 0 ? 1 : -1)) > 0 ? 1.0 : -1.0;
        const double c = C(xe);
        if (kind == KernelKind::Sinc2)
            integral.add_known(sign * c * sinc2_tail(X, z), c * sinc2_tail_error(X, z));
        else
            integral.add_known(sign * c * sine_tail(z), c * sine_tail_error(z));
    };
    for (const Window& w : merged) {
        correct(w.lo, -1);
        correct(w.hi, +1);
    }

    if (kind == KernelKind::Sinc2) {
        // Period-averaged kernel 1/(2x^2) on the gaps and the two tails.
        const std::size_t avg_id =
            integral.add_integrand([C](double x) { return 0.5 * C(x) / (x * x); });
        for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
            const double a = merged[i].hi, b = merged[i + 1].lo;
            if (!(b > a)) continue;
            cuts.clear();
            const double sgn = a > 0 ? 1.0 : -1.0;
            double inner = std::min(std::abs(a), std::abs(b)), outer = std::max(std::abs(a), std::abs(b));
            for (double r = inner * 4.0; r < outer; r *= 4.0) cuts.push_back(sgn * r);
            auto lo_it = std::upper_bound(bps.begin(), bps.end(), a);
            auto hi_it = std::lower_bound(bps.begin(), bps.end(), b);
            cuts.insert(cuts.end(), lo_it, hi_it);
            integral.add_range(avg_id, a, b, cuts);
        }
        for (int side : {-1, +1}) {
            const double X = side > 0 ? merged.back().hi : -merged.front().lo;
            const std::size_t tail_id = integral.add_integrand([C, X, side](double u) {
                return 0.5 * C(side * X / u) / X;
            });
            cuts.clear();
            for (double b : bps)
                if (b * side > X) cuts.push_back(X / std::abs(b));
            for (double u = 0.5; u > 1e-6; u *= 0.25) cuts.push_back(u);
            integral.add_range(tail_id, 0.0, 1.0, cuts);
        }
    }

    AdaptiveOptions opt;
    opt.rel_tol = q.rel_tol;
    opt.max_depth = q.max_depth;
    opt.max_intervals = q.max_intervals;
    return integral.integrate(opt);
}

void check_prefactor(double prefactor) {
    if (!std::isfinite(prefactor) || prefactor < 0.0)
        throw ValidationError("prefactor must be finite and >= 0");
}

}  // namespace

void validate(const FilterKernelParams& p) {
    if (!(std::isfinite(p.omega_m) && p.omega_m > 0.0))
        throw ValidationError("filter kernel: omega_m must be > 0");
    if (!(std::isfinite(p.t) && p.t >= 0.0))
        throw ValidationError("filter kernel: t must be >= 0");
}

void validate(const QuadratureConfig& q) {
    if (!(q.rel_tol > 0.0)) throw ValidationError("quadrature: tolerance must be > 0");
    if (!(q.nodes_per_period >= 4.0)) throw ValidationError("quadrature: nodes per period must be >= 4");
    if (!(q.tail_fraction > 0.0)) throw ValidationError("quadrature: tail fraction must be > 0");
    if (q.min_core_periods < 1) throw ValidationError("quadrature: core must span at least one period");
    if (!(q.max_exact_periods >= 1.0)) throw ValidationError("quadrature: max exact periods must be >= 1");
    if (q.max_depth < 1) throw ValidationError("quadrature: max depth must be >= 1");
}

double filter_kernel(const FilterKernelParams& p, double nu) {
    return sinc2(nu - p.omega_m, p.t);
}

double sine_kernel(const FilterKernelParams& p, double nu) {
    return sinx(nu - p.omega_m, p.t);
}

QuadratureResult kernel_integral(const NoiseSpectrum& s, const FilterKernelParams& p,
                                 const QuadratureConfig& q) {
    return filtered_integral(s, p, q, KernelKind::Sinc2);
}

QuadratureResult sine_kernel_integral(const NoiseSpectrum& s, const FilterKernelParams& p,
                                      const QuadratureConfig& q) {
    return filtered_integral(s, p, q, KernelKind::Sine);
}

double direct_force_prefactor(double mass, double omega_m, Units units) {
    if (!(mass > 0.0) || !(omega_m > 0.0))
        throw ValidationError("prefactor: mass and omega_m must be > 0");
    return 1.0 / (two_pi * mass * omega_m * reduced_planck(units));
}

PhononEstimate expected_phonons(const NoiseSpectrum& s, double prefactor, double background_rate,
                                double n0, const FilterKernelParams& p, const QuadratureConfig& q) {
    check_prefactor(prefactor);
    if (!(std::isfinite(n0) && n0 >= 0.0)) throw ValidationError("n0 must be >= 0");
    if (!(std::isfinite(background_rate) && background_rate >= 0.0))
        throw ValidationError("background rate must be >= 0");
    validate(p);
    const double base = n0 + background_rate * p.t;
    if (prefactor == 0.0) return {base, 0.0};
    const QuadratureResult r = kernel_integral(s, p, q);
    // The integrand is nonnegative; clip quadrature noise below the floor.
    return {base + prefactor * std::max(r.value, 0.0), prefactor * r.abs_error};
}

PhononEstimate heating_rate(const NoiseSpectrum& s, double prefactor, const FilterKernelParams& p,
                            const QuadratureConfig& q) {
    check_prefactor(prefactor);
    if (prefactor == 0.0) return {};
    const QuadratureResult r = sine_kernel_integral(s, p, q);
    return {0.5 * prefactor * r.value, 0.5 * prefactor * r.abs_error};
}

MomentCoefficients moment_coefficients(const SpectrumComponent& c, const FilterKernelParams& p,
                                       double mass, double rel_tol) {
    validate(p);
    if (!(mass > 0.0)) throw ValidationError("moment coefficients: mass must be > 0");
    if (p.t == 0.0) return {};
    if (const auto* w = std::get_if<WhiteNoise>(&c)) {
        // The delta sits on the endpoint y = 0 and counts one half.
        return {-0.5 * w->level, 0.0};
    }
    const auto* g = std::get_if<GaussianPeak>(&c);
    if (!g) throw CapabilityError("moment coefficients: no closed-form autocorrelation for " +
                                  std::string(kind_name(c)) + " components");

    const double wm = p.omega_m;
    const GaussianPeak peak = *g;
    double width = pi / wm;
    if (peak.center > 0.0) width = std::min(width, pi / peak.center);
    width = std::min(width, 1.0 / peak.width);
    const double panels = std::min(std::ceil(p.t / width), 1e6);

    AdaptiveOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-300;
    std::vector<double> cuts;
    for (double k = 1; k < panels; ++k) cuts.push_back(p.t * k / panels);

    PanelIntegral cos_part;
    const auto ic = cos_part.add_integrand(
        [peak, wm](double y) { return gaussian_autocorrelation(peak, y) * std::cos(wm * y); });
    cos_part.add_range(ic, 0.0, p.t, cuts);
    PanelIntegral sin_part;
    const auto is = sin_part.add_integrand(
        [peak, wm](double y) { return gaussian_autocorrelation(peak, y) * std::sin(wm * y); });
    sin_part.add_range(is, 0.0, p.t, cuts);

    MomentCoefficients m;
    m.gamma = -cos_part.integrate(opt).value;
    m.theta = sin_part.integrate(opt).value / (mass * wm);
    return m;
}

Trajectory damped_evolution(const NoiseSpectrum& heating, const NoiseSpectrum& total,
                            double prefactor, const FilterKernelParams& p, double n0,
                            const StepConfig& step, const QuadratureConfig& q) {
    namespace odeint = boost::numeric::odeint;
    check_prefactor(prefactor);
    validate(p);
    if (!(std::isfinite(n0) && n0 >= 0.0)) throw ValidationError("n0 must be >= 0");
    if (step.samples < 2) throw ValidationError("damped evolution: need at least 2 samples");

    Trajectory traj;
    std::vector<double> times(step.samples);
    for (std::size_t i = 0; i < step.samples; ++i)
        times[i] = p.t * static_cast<double>(i) / static_cast<double>(step.samples - 1);
    if (p.t == 0.0) {
        traj.time = {0.0};
        traj.phonons = {n0};
        return traj;
    }

    // Quadrature inside the right-hand side is tightened so its noise stays
    // below the stepper's error control.
    QuadratureConfig inner = q;
    inner.rel_tol = std::min(q.rel_tol, 1e-9);

    auto rhs = [&](const double& n, double& dndt, double tau) {
        const FilterKernelParams at{p.omega_m, tau};
        const double s1 = sine_kernel_integral(heating, at, inner).value;
        const double s2 = sine_kernel_integral(total, at, inner).value;
        dndt = 0.5 * prefactor * (s1 - (s2 - s1) * n);
        if (!std::isfinite(dndt)) throw NumericalError("damped evolution: non-finite rate");
    };
    auto observe = [&](const double& n, double tau) {
        traj.time.push_back(tau);
        traj.phonons.push_back(n);
    };

    double state = n0;
    try {
        auto stepper = odeint::make_dense_output(step.abs_tol, step.rel_tol,
                                                 odeint::runge_kutta_dopri5<double>());
        odeint::integrate_times(stepper, rhs, state, times.begin(), times.end(), p.t / 64.0, observe,
                                odeint::max_step_checker(static_cast<int>(step.max_steps)));
    } catch (const NumericalError& e) {
        const double lt = traj.time.empty() ? 0.0 : traj.time.back();
        const double ln = traj.phonons.empty() ? n0 : traj.phonons.back();
        throw StepperError(std::string("damped evolution failed: ") + e.what(), lt, ln);
    } catch (const std::exception& e) {
        const double lt = traj.time.empty() ? 0.0 : traj.time.back();
        const double ln = traj.phonons.empty() ? n0 : traj.phonons.back();
        throw StepperError(std::string("damped evolution failed: ") + e.what(), lt, ln);
    }
    return traj;
}

}  // namespace phonospec
