#include "phonospec/experiment.hpp"

#include "phonospec/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace phonospec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

SweepPlan plan_sweep(double lo, double hi, std::size_t n, TimePolicy policy,
                     std::span<const double> times, int repetitions) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && lo < hi))
        throw ValidationError("sweep: need 0 < omega_lo < omega_hi");
    if (n < 2) throw ValidationError("sweep: need at least 2 points");
    if (times.empty()) throw ValidationError("sweep: need at least one measurement time");
    for (double t : times)
        if (!(std::isfinite(t) && t > 0.0)) throw ValidationError("sweep: measurement times must be > 0");
    if (repetitions < 1) throw ValidationError("sweep: repetitions must be >= 1");

    std::vector<double> ts(times.begin(), times.end());
    std::sort(ts.begin(), ts.end());
    SweepPlan plan;
    plan.policy = policy;
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < n; ++i) {
        double w = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
        if (i == 0) w = lo;
        if (i + 1 == n) w = hi;
        for (double t : ts) {
            const double ti = policy == TimePolicy::Fixed ? t : t * lo / w;
            plan.points.push_back({w, ti, repetitions});
        }
    }
    return plan;
}

SweepPlan plan_sweep(double lo, double hi, std::size_t n, TimePolicy policy, double time,
                     int repetitions) {
    return plan_sweep(lo, hi, n, policy, std::span<const double>(&time, 1), repetitions);
}

std::uint64_t point_stream(std::uint64_t seed, const SweepPoint& point) {
    const auto w = std::bit_cast<std::uint64_t>(point.omega_m);
    const auto t = std::bit_cast<std::uint64_t>(point.t);
    return splitmix64(seed ^ splitmix64(w ^ splitmix64(t + 0x632be59bd9b4e019ULL)));
}

MeasurementRecord observe(const SweepPoint& point, double n_true, const NoiseModel& noise,
                          std::uint64_t stream) {
    MeasurementRecord r;
    r.omega_m = point.omega_m;
    r.t = point.t;
    r.n_true = n_true;
    r.repetitions = point.repetitions;
    r.stream = stream;
    switch (noise.kind) {
        case NoiseModel::Kind::Off: r.sigma_n = 0.0; break;
        case NoiseModel::Kind::Thermal:
            r.sigma_n = std::sqrt(n_true * (n_true + 1.0) / point.repetitions);
            break;
        case NoiseModel::Kind::Fixed: r.sigma_n = noise.sigma; break;
    }
    if (r.sigma_n > 0.0) {
        std::mt19937_64 gen(stream);
        std::normal_distribution<double> normal(0.0, 1.0);
        r.n_obs = std::max(0.0, n_true + r.sigma_n * normal(gen));
    } else {
        r.n_obs = std::max(0.0, n_true);
    }
    return r;
}

MeasurementDataset run_campaign(const Scenario& scenario, const SweepPlan& plan,
                                const NoiseModel& noise, std::uint64_t seed, unsigned threads) {
    validate(scenario);
    if (noise.kind == NoiseModel::Kind::Fixed && !(noise.sigma >= 0.0))
        throw ValidationError("noise: fixed sigma must be >= 0");

    MeasurementDataset ds;
    ds.fingerprint = scenario.fingerprint;
    ds.seed = seed;
    ds.n0 = scenario.environment.initial_phonons;
    ds.records.resize(plan.points.size());

    auto evaluate_point = [&](std::size_t i) {
        const SweepPoint& pt = plan.points[i];
        const std::uint64_t stream = point_stream(seed, pt);
        try {
            const PhononEstimate e = expected_phonons(scenario, pt.omega_m, pt.t);
            ds.records[i] = observe(pt, e.value, noise, stream);
        } catch (const ConvergenceError& e) {
            MeasurementRecord r = observe(pt, e.estimate(), NoiseModel{}, stream);
            r.failed = true;
            r.failure = e.what();
            ds.records[i] = r;
        } catch (const std::exception& e) {
            MeasurementRecord r;
            r.omega_m = pt.omega_m;
            r.t = pt.t;
            r.repetitions = pt.repetitions;
            r.stream = stream;
            r.n_true = r.n_obs = std::numeric_limits<double>::quiet_NaN();
            r.failed = true;
            r.failure = e.what();
            ds.records[i] = r;
        }
    };

    const std::size_t n = plan.points.size();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) evaluate_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) evaluate_point(i);
            });
        for (auto& th : pool) th.join();
    }
    return ds;
}

}  // namespace phonospec
