#include "phonospec/quadrature.hpp"

#include "phonospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace phonospec {

namespace {

constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Rule {
    double value;
    double error;
    double resabs;
};

Rule qk15(const std::function<double(double)>& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);

    double fv1[7], fv2[7];
    const double fc = f(centr);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * xgk[jtw];
        const double f1 = f(centr - absc);
        const double f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += wg[j] * (f1 + f2);
        resk += wgk[jtw] * (f1 + f2);
        resabs += wgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * xgk[jtwm1];
        const double f1 = f(centr - absc);
        const double f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += wgk[jtwm1] * (f1 + f2);
        resabs += wgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double result = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0)
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        abserr = std::max(eps * 50.0 * resabs, abserr);
    if (!std::isfinite(result) || !std::isfinite(abserr))
        throw NumericalError("quadrature: integrand returned a non-finite value on [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
    return {result, abserr, resabs};
}

struct Live {
    std::size_t integrand;
    double lo, hi;
    double value, error, resabs;
    int depth;
};

struct ByError {
    bool operator()(const Live& x, const Live& y) const { return x.error < y.error; }
};

}  // namespace

QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
    const Rule r = qk15(f, a, b);
    return {r.value, r.error, 15};
}

std::size_t PanelIntegral::add_integrand(Integrand f) {
    integrands_.push_back(std::move(f));
    return integrands_.size() - 1;
}

void PanelIntegral::add_panel(std::size_t integrand, double lo, double hi) {
    if (integrand >= integrands_.size())
        throw ValidationError("PanelIntegral: unknown integrand index");
    if (!(hi > lo)) return;
    panels_.push_back({integrand, lo, hi});
}

void PanelIntegral::add_range(std::size_t integrand, double lo, double hi,
                              std::span<const double> breakpoints, std::size_t pieces) {
    if (!(hi > lo)) return;
    std::vector<double> cuts{lo};
    for (double b : breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    pieces = std::max<std::size_t>(pieces, 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const double h = (b - a) / static_cast<double>(pieces);
        for (std::size_t k = 0; k < pieces; ++k) {
            const double p = a + h * static_cast<double>(k);
            const double q = (k + 1 == pieces) ? b : a + h * static_cast<double>(k + 1);
            add_panel(integrand, p, q);
        }
    }
}

void PanelIntegral::add_known(double value, double abs_error) {
    known_value_ += value;
    known_error_ += std::abs(abs_error);
}

QuadratureResult PanelIntegral::integrate(const AdaptiveOptions& opt) const {
    std::vector<Live> heap;
    heap.reserve(panels_.size() * 2 + 16);
    std::size_t evals = 0;
    for (const Panel& p : panels_) {
        const Rule r = qk15(integrands_[p.integrand], p.lo, p.hi);
        evals += 15;
        heap.push_back({p.integrand, p.lo, p.hi, r.value, r.error, r.resabs, 0});
    }
    std::make_heap(heap.begin(), heap.end(), ByError{});

    // Retired panels cannot be refined further; their error stays in the total.
    double retired_value = 0.0, retired_error = 0.0, resabs_total = 0.0;
    double value = known_value_, error = known_error_;
    for (const Live& l : heap) {
        value += l.value;
        error += l.error;
        resabs_total += l.resabs;
    }

    auto target = [&] {
        return std::max({opt.rel_tol * std::abs(value), opt.abs_tol, 100.0 * eps * resabs_total});
    };

    while (error > target()) {
        if (heap.empty()) break;
        std::pop_heap(heap.begin(), heap.end(), ByError{});
        Live worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.lo + worst.hi);
        const bool too_small = !(mid > worst.lo && mid < worst.hi);
        if (worst.depth >= opt.max_depth || too_small) {
            retired_value += worst.value;
            retired_error += worst.error;
            continue;
        }
        if (heap.size() + 2 > opt.max_intervals) {
            heap.push_back(worst);
            break;
        }
        const auto& f = integrands_[worst.integrand];
        const Rule left = qk15(f, worst.lo, mid);
        const Rule right = qk15(f, mid, worst.hi);
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        resabs_total += left.resabs + right.resabs - worst.resabs;
        heap.push_back({worst.integrand, worst.lo, mid, left.value, left.error, left.resabs,
                        worst.depth + 1});
        std::push_heap(heap.begin(), heap.end(), ByError{});
        heap.push_back({worst.integrand, mid, worst.hi, right.value, right.error, right.resabs,
                        worst.depth + 1});
        std::push_heap(heap.begin(), heap.end(), ByError{});
    }

    // Recompute the sums from scratch to shed accumulated rounding.
    double v = known_value_ + retired_value, e = known_error_ + retired_error;
    for (const Live& l : heap) {
        v += l.value;
        e += l.error;
    }
    if (e > target() * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "quadrature did not converge: estimate " << v << " with error " << e
            << " after " << evals << " evaluations";
        throw ConvergenceError(msg.str(), v, e);
    }
    return {v, e, evals};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const AdaptiveOptions& opt,
                                    std::span<const double> breakpoints) {
    if (lo == hi) return {};
    if (hi < lo) {
        QuadratureResult r = integrate_adaptive(f, hi, lo, opt, breakpoints);
        r.value = -r.value;
        return r;
    }
    PanelIntegral p;
    const auto id = p.add_integrand(f);
    p.add_range(id, lo, hi, breakpoints);
    return p.integrate(opt);
}

}  // namespace phonospec
