// quadrature.hpp - globally adaptive Gauss-Kronrod (7/15) over a set of panels

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace phonospec {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

struct AdaptiveOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_depth = 48;                   // bisections of any single panel
    std::size_t max_intervals = 4000000;  // live intervals, all integrands together
};

// Single GK15 rule on [a, b]; abs_error uses the QUADPACK estimate.
QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

// A sum of integrals, each split into initial panels, refined together:
// the panel with the largest error estimate is bisected until the total
// error meets max(rel_tol * |total|, abs_tol).
class PanelIntegral {
public:
    using Integrand = std::function<double(double)>;

    std::size_t add_integrand(Integrand f);
    void add_panel(std::size_t integrand, double lo, double hi);
    // Splits [lo, hi] at the given interior points and into at most
    // `pieces` equal panels between consecutive points.
    void add_range(std::size_t integrand, double lo, double hi,
                   std::span<const double> breakpoints = {}, std::size_t pieces = 1);
    // Analytic contribution with its own error bound.
    void add_known(double value, double abs_error = 0.0);

    std::size_t panel_count() const noexcept { return panels_.size(); }

    // Throws ConvergenceError when the budget is exhausted.
    QuadratureResult integrate(const AdaptiveOptions& opt) const;

private:
    struct Panel {
        std::size_t integrand;
        double lo, hi;
    };
    std::vector<Integrand> integrands_;
    std::vector<Panel> panels_;
    double known_value_ = 0.0;
    double known_error_ = 0.0;
};

// Convenience wrapper for one integrand on [lo, hi].
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const AdaptiveOptions& opt = {},
                                    std::span<const double> breakpoints = {});

}  // namespace phonospec
