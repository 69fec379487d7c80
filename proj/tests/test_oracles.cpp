#include "doctest.h"
#include "support.hpp"

#include "phonospec/errors.hpp"
#include "phonospec/kernel.hpp"
#include "phonospec/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace phonospec;
using constants::hbar;
using constants::pi;

namespace {

const double kMass = 1.2042771838760873e-18;

GaussianOracleInput input(double eta, double nu0, double gamma, double w, double t) {
    return GaussianOracleInput{eta, nu0, gamma, w, t, kMass, Units::SI};
}

// (eta gamma / (4 m w hbar sqrt(2 pi))) int_0^t int_0^t exp(-gamma^2 (s - s')^2 / 2) cos(delta (s - s')) ds ds'
double time_domain(const GaussianOracleInput& in) {
    using boost::math::quadrature::gauss_kronrod;
    const double d = in.center - in.omega_m, g = in.width, t = in.t;
    // fixed panels, no adaptivity: inner noise would stall an adaptive outer rule
    const int pieces = 4 + static_cast<int>(std::abs(d) * t / pi + 2.0 * g * t);
    auto over = [&](const std::function<double(double)>& f, double a, double b) {
        double s = 0.0;
        for (int k = 0; k < pieces; ++k)
            s += gauss_kronrod<double, 61>::integrate(f, a + (b - a) * k / pieces, a + (b - a) * (k + 1) / pieces, 0, 0.0);
        return s;
    };
    auto outer = [&](double s) {
        auto inner = [&](double sp) {
            const double u = s - sp;
            return std::exp(-0.5 * g * g * u * u) * std::cos(d * u);
        };
        return over(inner, 0.0, t);
    };
    const double pre = in.strength * g / (4.0 * in.mass * in.omega_m * hbar * std::sqrt(2.0 * pi));
    return pre * over(outer, 0.0, t);
}

}  // namespace

TEST_CASE("reduced integral matches the two-dimensional time integral") {
    testing::Gen g(61);
    for (int i = 0; i < 20; ++i) {
        const double t = g.log_uniform(1e-4, 1e-2);
        const double w = g.log_uniform(1e3, 1e6);
        const double gamma = g.log_uniform(0.05, 20.0) / t;
        const double nu0 = std::max(0.0, w + g.uniform(-15.0, 15.0) / t);
        const auto in = input(1e-30, nu0, gamma, w, t);
        CHECK(testing::rel_err(gaussian_Nt(in), time_domain(in)) <= 1e-6);
    }
}

TEST_CASE("even oracle matches the forward model") {
    testing::Gen g(62);
    for (int i = 0; i < 5; ++i) {
        double t, w, gamma, nu0;
        do {
            t = g.log_uniform(1e-4, 1e-2);
            w = g.log_uniform(1e4, 1e6);
            gamma = g.log_uniform(0.1, 10.0) / t;
            nu0 = w + g.uniform(-5.0, 5.0) / t;
        } while (nu0 < 8.0 * gamma);
        const auto in = input(1e-30, nu0, gamma, w, t);
        QuadratureConfig q;
        q.rel_tol = 1e-9;
        const double n = expected_phonons(build_spectrum({GaussianPeak{1e-30, nu0, gamma}}),
                                          direct_force_prefactor(kMass, w), 0.0, 0.0, {w, t}, q).value;
        CHECK(testing::rel_err(gaussian_Nt_even(in), n) <= 1e-8);
    }
}

TEST_CASE("narrow and broad limits bracket the full result") {
    testing::Gen g(63);
    for (int i = 0; i < 30; ++i) {
        const double t = g.log_uniform(1e-4, 1e-1), w = g.log_uniform(1e3, 1e6);
        const double narrow = g.log_uniform(1e-4, 0.049) / t;
        const auto a = input(1e-30, std::max(0.0, w + g.uniform(-20.0, 20.0) / t), narrow, w, t);
        CHECK(testing::rel_err(gaussian_narrow_closed_form(a), gaussian_Nt(a)) <= 0.1);

        const double broad = g.log_uniform(20.5, 1e3) / t;
        const auto b = input(1e-30, std::max(0.0, w + g.uniform(-2.0, 2.0) * broad), broad, w, t);
        CHECK(testing::rel_err(gaussian_limit_broad(b), gaussian_Nt(b)) <= 0.1);
    }
}

TEST_CASE("limit examples") {
    const double w = 2e4, t = 1e-3;
    const double scale = 1e-30 / (4.0 * kMass * w * hbar);

    const auto on = input(1e-30, w, 10.0, w, t);
    CHECK(gaussian_limit_narrow(on) == doctest::Approx(std::sqrt(1.0 / (2.0 * pi)) * 10.0 * t * t * scale).epsilon(1e-14));
    CHECK(gaussian_narrow_closed_form(on) == doctest::Approx(gaussian_limit_narrow(on)).epsilon(1e-14));

    const auto broad = input(1e-30, w, 1e5, w, t);
    CHECK(gaussian_limit_broad(broad) == doctest::Approx(t * scale).epsilon(1e-14));
    const auto off = input(1e-30, w + 1e5, 1e5, w, t);
    CHECK(gaussian_limit_broad(off) == doctest::Approx(t * scale * std::exp(-0.5)).epsilon(1e-14));

    CHECK(gaussian_Nt(input(0.0, w, 1e3, w, t)) == 0.0);
    CHECK(gaussian_Nt(input(1e-30, w, 1e3, w, 0.0)) == 0.0);
}

TEST_CASE("limit guards") {
    const double w = 2e4, t = 1e-3;
    CHECK_THROWS_AS(gaussian_limit_narrow(input(1e-30, w, 100.0, w, t)), DomainError);
    CHECK_THROWS_AS(gaussian_narrow_closed_form(input(1e-30, w, 100.0, w, t)), DomainError);
    CHECK_THROWS_AS(gaussian_limit_broad(input(1e-30, w, 1e4, w, t)), DomainError);
    CHECK_THROWS_AS(gaussian_Nt(input(1e-30, w, 0.0, w, t)), ValidationError);
    CHECK_THROWS_AS(gaussian_Nt(input(-1.0, w, 1.0, w, t)), ValidationError);
    CHECK_THROWS_AS(gaussian_Nt_even(input(1e-30, 10.0, 5.0, w, t)), DomainError);
}

TEST_CASE("white noise closed form") {
    const double d = 1e-30, w = 3e4;
    const double n1 = white_noise_nt(d, kMass, w, 1e-3, 7.0);
    const double n2 = white_noise_nt(d, kMass, w, 2e-3, 7.0);
    CHECK(n2 - 7.0 == doctest::Approx(2.0 * (n1 - 7.0)).epsilon(1e-15));
    CHECK(n1 - 7.0 == doctest::Approx(d * 1e-3 / (4.0 * kMass * w * hbar)).epsilon(1e-15));
    CHECK(white_noise_nt(d, 2.0, 4.0, 3.0, 0.0, Units::Natural) == doctest::Approx(d * 3.0 / 32.0));
    CHECK(white_noise_nt(0.0, kMass, w, 1.0, 5.0) == 5.0);
}
