#include "phonospec/reconstruct.hpp"

#include "phonospec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace phonospec {

double resolution_bandwidth(double t) {
    if (!(t > 0.0)) throw ValidationError("resolution: t must be > 0");
    return constants::two_pi / t;
}

EstimatePoint reconstruct_point(const MeasurementRecord& r, double n0, double background_rate,
                                double calibration, double mass, Units units) {
    if (calibration == 0.0 || !std::isfinite(calibration))
        throw CalibrationError("reconstruct: channel calibration is zero");
    if (!(r.t > 0.0)) throw ValidationError("reconstruct: t must be > 0");
    if (!(mass > 0.0)) throw ValidationError("reconstruct: mass must be > 0");
    const double scale = 4.0 * mass * r.omega_m * reduced_planck(units) / (calibration * r.t);
    EstimatePoint e;
    e.omega_m = r.omega_m;
    e.t = r.t;
    e.c_hat = scale * (r.n_obs - n0 - background_rate * r.t);
    e.sigma_c = std::abs(scale) * r.sigma_n;
    e.resolution = resolution_bandwidth(r.t);
    e.failed = r.failed;
    return e;
}

SpectrumEstimate reconstruct_sweep(const MeasurementDataset& ds, const Scenario& scenario,
                                   Baseline baseline) {
    if (ds.fingerprint != scenario.fingerprint)
        throw IntegrityError("dataset fingerprint " + ds.fingerprint +
                             " does not match scenario fingerprint " + scenario.fingerprint);
    SpectrumEstimate est;
    if (ds.records.empty()) return est;
    est.calibration = channel_calibration(scenario);
    const double m = scenario.particle.mass();

    std::map<double, double> intercept;
    if (baseline == Baseline::Fitted) {
        std::map<double, std::vector<const MeasurementRecord*>> by_freq;
        for (const auto& r : ds.records)
            if (!r.failed) by_freq[r.omega_m].push_back(&r);
        for (const auto& [w, rs] : by_freq) {
            if (rs.size() < 2)
                throw ValidationError("reconstruct: fitted baseline needs >= 2 times per frequency");
            double st = 0, sn = 0, stt = 0, stn = 0;
            const double k = static_cast<double>(rs.size());
            for (const auto* r : rs) {
                st += r->t;
                sn += r->n_obs;
                stt += r->t * r->t;
                stn += r->t * r->n_obs;
            }
            const double slope = (k * stn - st * sn) / (k * stt - st * st);
            intercept[w] = (sn - slope * st) / k;
        }
    }

    est.points.reserve(ds.records.size());
    for (const auto& r : ds.records) {
        const double bg = background_budget(scenario, r.omega_m).total;
        double n0 = ds.n0;
        if (baseline == Baseline::Fitted && !r.failed) n0 = intercept.at(r.omega_m);
        est.points.push_back(reconstruct_point(r, n0, bg, est.calibration, m, scenario.units));
    }
    return est;
}

namespace {

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + static_cast<long>(n / 2), v.end());
    double hi = v[n / 2];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(n / 2));
    return 0.5 * (lo + hi);
}

}  // namespace

RingingReport detect_ringing(const SpectrumEstimate& estimate, double t, const RingingOptions& opt) {
    const double P = resolution_bandwidth(t);
    RingingReport rep;
    rep.expected_spacing = P;

    std::vector<std::pair<double, double>> pts;
    for (const auto& p : estimate.points) {
        if (p.failed || !std::isfinite(p.c_hat)) continue;
        if (std::abs(p.t - t) > 1e-9 * t) continue;
        if (p.omega_m < opt.band_lo || p.omega_m > opt.band_hi) continue;
        pts.emplace_back(p.omega_m, p.c_hat);
    }
    std::sort(pts.begin(), pts.end());
    rep.points = pts.size();
    if (pts.size() < 8) {
        std::ostringstream msg;
        msg << "ringing detection needs at least 8 points in the band at t = " << t << ", found "
            << pts.size() << "; run a denser sweep";
        throw CapabilityError(msg.str());
    }
    rep.band_lo = pts.front().first;
    rep.band_hi = pts.back().first;
    double max_gap = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        scale = std::max(scale, std::abs(pts[i].second));
        if (i > 0) max_gap = std::max(max_gap, pts[i].first - pts[i - 1].first);
    }
    if (!(max_gap < 0.25 * P)) {
        std::ostringstream msg;
        msg << "ringing detection needs point spacing below pi/(2t) = " << 0.25 * P
            << " rad/s, largest gap is " << max_gap << " rad/s; run a denser sweep";
        throw CapabilityError(msg.str());
    }
    if (scale == 0.0) return rep;

    // Detrend with a running median over one kernel period, then divide by
    // the trend so the 1/x^2 fall-off of the sidelobes does not dominate.
    std::vector<double> resid(pts.size());
    std::vector<double> window;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        window.clear();
        for (const auto& q : pts)
            if (std::abs(q.first - pts[i].first) <= 0.5 * P) window.push_back(q.second);
        const double trend = median(window);
        const double r = pts[i].second - trend;
        sumsq += r * r;
        resid[i] = r / std::max(std::abs(trend), 1e-3 * scale);
    }
    rep.relative_amplitude = std::sqrt(sumsq / static_cast<double>(pts.size())) / scale;

    std::vector<double> crossings;
    std::size_t last = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(resid[i]) <= 1e-9) continue;
        if (last < pts.size() && (resid[last] > 0) != (resid[i] > 0)) {
            const double x0 = pts[last].first, x1 = pts[i].first;
            const double r0 = resid[last], r1 = resid[i];
            crossings.push_back(x0 + (x1 - x0) * r0 / (r0 - r1));
        }
        last = i;
    }
    rep.crossings = crossings.size();
    if (crossings.size() < std::max<std::size_t>(opt.min_crossings, 2)) return rep;

    // Least-squares fit of offset + sinusoid for trial periods P/2 .. 2P.
    // Points are weighted by their share of the band so the log-spaced grid
    // does not favour the low end.
    const std::size_t m = pts.size();
    std::vector<double> wt(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double l = pts[i > 0 ? i - 1 : i].first, r = pts[i + 1 < m ? i + 1 : i].first;
        wt[i] = 0.5 * (r - l);
    }
    double best = -1.0;
    const int trials = 801;
    for (int k = 0; k < trials; ++k) {
        const double period = 0.5 * P * std::pow(4.0, static_cast<double>(k) / (trials - 1));
        const double f = constants::two_pi / period;
        // normal equations for y ~ a + b cos + c sin
        double A[3][3] = {}, y[3] = {}, yy = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double ph = f * (pts[i].first - rep.band_lo);
            const double v[3] = {1.0, std::cos(ph), std::sin(ph)};
            for (int r = 0; r < 3; ++r) {
                y[r] += wt[i] * v[r] * resid[i];
                for (int c = 0; c < 3; ++c) A[r][c] += wt[i] * v[r] * v[c];
            }
            yy += wt[i] * resid[i] * resid[i];
        }
        // explained weighted variance beyond the offset-only fit
        double M[3][4];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) M[r][c] = A[r][c];
            M[r][3] = y[r];
        }
        bool ok = true;
        for (int c = 0; c < 3 && ok; ++c) {
            int piv = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
            if (std::abs(M[piv][c]) < 1e-14 * A[0][0]) {
                ok = false;
                break;
            }
            for (int j = 0; j < 4; ++j) std::swap(M[c][j], M[piv][j]);
            for (int r = 0; r < 3; ++r) {
                if (r == c) continue;
                const double g = M[r][c] / M[c][c];
                for (int j = c; j < 4; ++j) M[r][j] -= g * M[c][j];
            }
        }
        if (!ok) continue;
        double fit = 0.0;
        for (int r = 0; r < 3; ++r) fit += (M[r][3] / M[r][r]) * y[r];
        const double power = fit - y[0] * y[0] / A[0][0];
        (void)yy;
        if (power > best) {
            best = power;
            rep.spacing = period;
        }
    }
    rep.match_ratio = rep.spacing / P;
    rep.detected = rep.match_ratio >= opt.ratio_lo && rep.match_ratio <= opt.ratio_hi &&
                   rep.relative_amplitude >= opt.min_relative_amplitude;
    return rep;
}

}  // namespace phonospec
