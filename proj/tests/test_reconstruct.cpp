#include "doctest.h"
#include "support.hpp"

#include "phonospec/errors.hpp"
#include "phonospec/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace phonospec;
using constants::pi;
using constants::two_pi;

namespace {

double peak_error(const Scenario& base, const GaussianPeak& g, double t) {
    Scenario s = base;
    s.spectrum = build_spectrum({g});
    const auto ds = run_campaign(s, plan_sweep(g.center, 2.0 * g.center, 2, TimePolicy::Fixed, t), NoiseModel{}, 1);
    const auto est = reconstruct_sweep(ds, s);
    return std::abs(est.points.front().c_hat - g.strength) / g.strength;
}

SpectrumEstimate synthetic(double lo, double hi, double step, double t, const std::function<double(double)>& f) {
    SpectrumEstimate e;
    for (double w = lo; w <= hi; w += step) e.points.push_back({w, t, f(w), resolution_bandwidth(t), 0.0, false});
    return e;
}

}  // namespace

TEST_CASE("resolution bandwidth") {
    CHECK(resolution_bandwidth(1e-2) == doctest::Approx(two_pi * 100.0).epsilon(1e-15));
    CHECK(resolution_bandwidth(1e-4) == doctest::Approx(two_pi * 1e4).epsilon(1e-15));
    CHECK(resolution_bandwidth(2e-3) == doctest::Approx(resolution_bandwidth(1e-3) / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(resolution_bandwidth(0.0), ValidationError);
}

TEST_CASE("single point inversion") {
    const double m = 1.2e-18, w = 2e4, t = 0.0009765625, k = 1.7e-39, bg = 32.0;
    MeasurementRecord r{w, t, 0.0, 10.0 + bg * t, 0.0, 1, 0, false, ""};
    CHECK(reconstruct_point(r, 10.0, bg, k, m).c_hat == 0.0);

    r.n_obs = 10.0 + bg * t + 3.0;
    r.sigma_n = 0.5;
    const auto p = reconstruct_point(r, 10.0, bg, k, m);
    const double scale = 4.0 * m * w * constants::hbar / (k * t);
    CHECK(p.c_hat == doctest::Approx(3.0 * scale).epsilon(1e-12));
    CHECK(p.sigma_c == doctest::Approx(0.5 * scale).epsilon(1e-15));
    CHECK(p.resolution == doctest::Approx(two_pi / t).epsilon(1e-15));

    r.n_obs = 9.0;
    CHECK(reconstruct_point(r, 10.0, bg, k, m).c_hat < 0.0);

    CHECK(reconstruct_point(r, 10.0, bg, 1.0, 1.0, Units::Natural).c_hat ==
          doctest::Approx(4.0 * w * (9.0 - 10.0 - bg * t) / t));

    CHECK_THROWS_AS(reconstruct_point(r, 10.0, bg, 0.0, m), CalibrationError);
    r.t = 0.0;
    CHECK_THROWS_AS(reconstruct_point(r, 10.0, bg, k, m), ValidationError);
}

TEST_CASE("white spectrum round trip") {
    for (auto channel : {CouplingChannel::ElectricField, CouplingChannel::DirectForce}) {
        Scenario s = default_scenario();
        s.channel = channel;
        const double level = channel == CouplingChannel::DirectForce ? 1e-30 : 1e8;
        s.spectrum = build_spectrum({WhiteNoise{level}});
        const auto ds = run_campaign(s, plan_sweep(two_pi * 1e2, two_pi * 1e6, 50, TimePolicy::Fixed, 1e-3), NoiseModel{}, 1, 4);
        const auto est = reconstruct_sweep(ds, s);
        REQUIRE(est.points.size() == 50);
        CHECK(est.calibration == channel_calibration(s));
        for (const auto& p : est.points) CHECK(testing::rel_err(p.c_hat, level) <= 10.0 * s.quadrature.rel_tol);
    }
}

TEST_CASE("broad Gaussian round trip") {
    Scenario s = default_scenario();
    const double t = 1e-2;
    testing::Gen g(71);
    for (int i = 0; i < 4; ++i) {
        const GaussianPeak peak{g.log_uniform(1e6, 1e10), g.log_uniform(1e4, 1e6), 0.0};
        GaussianPeak p = peak;
        p.width = g.uniform(20.0, 100.0) * resolution_bandwidth(t);
        s.spectrum = build_spectrum({p});
        const auto ds = run_campaign(s, plan_sweep(p.center - p.width, p.center + p.width, 41, TimePolicy::Fixed, t),
                                     NoiseModel{}, 1, 4);
        const auto est = reconstruct_sweep(ds, s);
        double worst = 0.0;
        for (const auto& e : est.points) worst = std::max(worst, testing::rel_err(e.c_hat, evaluate(p, e.omega_m)));
        CHECK(worst <= 0.05);
    }
}

TEST_CASE("peak error falls as t grows") {
    const Scenario s = default_scenario();
    for (double gamma : {30.0, 300.0, 3000.0}) {
        const GaussianPeak g{1e9, 3e4, gamma};
        const double e4 = peak_error(s, g, 1e-4), e3 = peak_error(s, g, 1e-3), e2 = peak_error(s, g, 1e-2);
        CHECK(e4 > e3);
        CHECK(e3 > e2);
    }
}

TEST_CASE("ringing appears for narrow features only") {
    Scenario s = default_scenario();
    const double t = 1e-3, nu0 = 5e4, P = resolution_bandwidth(t);
    const SweepPlan plan = plan_sweep(nu0 - 5.5 * P, nu0 + 5.5 * P, 400, TimePolicy::Fixed, t);
    RingingOptions band;
    band.band_lo = nu0 - 5.0 * P;
    band.band_hi = nu0 + 5.0 * P;

    s.spectrum = build_spectrum({GaussianPeak{1e9, nu0, 0.05 / t}});
    const auto narrow = detect_ringing(reconstruct_sweep(run_campaign(s, plan, NoiseModel{}, 1, 4), s), t, band);
    CHECK(narrow.detected);
    CHECK(narrow.match_ratio >= 0.8);
    CHECK(narrow.match_ratio <= 1.25);
    CHECK(narrow.expected_spacing == doctest::Approx(P));

    s.spectrum = build_spectrum({GaussianPeak{1e9, nu0, 20.0 / t}});
    const auto broad = detect_ringing(reconstruct_sweep(run_campaign(s, plan, NoiseModel{}, 1, 4), s), t, band);
    CHECK_FALSE(broad.detected);
}

TEST_CASE("synthetic ringing") {
    const double t = 1e-3, P = two_pi / t, nu0 = 1e5;
    auto base = [](double w) { return 2.0 + 1e-5 * w + std::exp(-w / 3e5); };
    const auto smooth = synthetic(nu0 - 6 * P, nu0 + 6 * P, P / 20.0, t, base);
    CHECK_FALSE(detect_ringing(smooth, t).detected);

    const double A = 2.0 * 1e8 / (pi * t);
    auto rung = [&](double w) {
        const double x = w - nu0;
        const double s = std::abs(x) < 1e-9 ? t * t / 4.0 : std::pow(std::sin(x * t / 2.0) / x, 2);
        return base(w) + A * s;
    };
    const auto est = synthetic(nu0 - 6 * P, nu0 + 6 * P, P / 20.0, t, rung);
    const auto rep = detect_ringing(est, t);
    CHECK(rep.detected);
    CHECK(rep.spacing == doctest::Approx(P).epsilon(0.1));

    // zeros of the injected term sit on nu0 + 2 pi k / t
    for (int k = -3; k <= 3; ++k) {
        if (k == 0) continue;
        const double w = nu0 + k * P;
        CHECK(std::abs(rung(w) - base(w)) <= 1e-12 * A * t * t);
    }
}

TEST_CASE("ringing needs dense sampling") {
    const double t = 1e-3, P = two_pi / t;
    auto flat = [](double) { return 1.0; };
    CHECK_THROWS_AS(detect_ringing(synthetic(1e5, 1e5 + 4 * P, P / 20.0, 2e-3, flat), t), CapabilityError);
    CHECK_THROWS_AS(detect_ringing(synthetic(1e5, 1e5 + 5 * P, P / 1.0, t, flat), t), CapabilityError);
    CHECK_THROWS_AS(detect_ringing(synthetic(1e5, 1e5 + 6.5 * P / 10.0, P / 10.0, t, flat), t), CapabilityError);
    CHECK_NOTHROW(detect_ringing(synthetic(1e5, 1e5 + 7.5 * P / 10.0, P / 10.0, t, flat), t));
    CHECK_NOTHROW(detect_ringing(synthetic(1e5, 1e5 + 5 * P, P / 10.0, t, flat), t));
}

TEST_CASE("sweep bookkeeping") {
    Scenario s = default_scenario();
    s.fingerprint = "aaaa";
    MeasurementDataset empty;
    empty.fingerprint = "aaaa";
    CHECK(reconstruct_sweep(empty, s).points.empty());

    s.spectrum = build_spectrum({WhiteNoise{1e8}});
    auto ds = run_campaign(s, plan_sweep(1e3, 1e5, 5, TimePolicy::Fixed, 1e-3), NoiseModel{}, 1);
    CHECK(ds.fingerprint == "aaaa");
    ds.fingerprint = "bbbb";
    CHECK_THROWS_AS(reconstruct_sweep(ds, s), IntegrityError);

    ds.fingerprint = "aaaa";
    ds.records[2].failed = true;
    ds.records[2].n_obs = std::nan("");
    const auto est = reconstruct_sweep(ds, s);
    CHECK(est.points[2].failed);
    CHECK_FALSE(est.points[1].failed);
}

TEST_CASE("fitted baseline") {
    Scenario s = default_scenario();
    s.spectrum = build_spectrum({WhiteNoise{1e-5}});
    const std::vector<double> times{1e-3, 2e-3, 4e-3};
    auto ds = run_campaign(s, plan_sweep(1e3, 1e5, 6, TimePolicy::Fixed, times), NoiseModel{}, 1, 2);
    ds.n0 = 0.0;  // wrong on purpose
    const auto modeled = reconstruct_sweep(ds, s, Baseline::Modeled);
    const auto fitted = reconstruct_sweep(ds, s, Baseline::Fitted);
    for (std::size_t i = 0; i < fitted.points.size(); ++i) {
        CHECK(testing::rel_err(fitted.points[i].c_hat, 1e-5) <= 1e-5);
        CHECK(testing::rel_err(modeled.points[i].c_hat, 1e-5) > 1e-2);
    }

    auto single = run_campaign(s, plan_sweep(1e3, 1e5, 6, TimePolicy::Fixed, 1e-3), NoiseModel{}, 1);
    CHECK_THROWS_AS(reconstruct_sweep(single, s, Baseline::Fitted), ValidationError);
}
