#include "phonospec/commands.hpp"

#include "phonospec/config.hpp"
#include "phonospec/errors.hpp"
#include "phonospec/io.hpp"
#include "phonospec/oracles.hpp"
#include "phonospec/reconstruct.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

namespace phonospec {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const std::string& dir, const std::string& name) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    const auto path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    return out;
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
    auto out = open_output(dir, name);
    out << j.dump(2) << '\n';
}

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Ringing scan: overlapping windows over the part of the sweep sampled
// finely enough for the detector.
json scan_ringing(const SpectrumEstimate& est, double t) {
    const double P = resolution_bandwidth(t);
    std::vector<double> w;
    for (const auto& p : est.points)
        if (std::abs(p.t - t) <= 1e-9 * t && !p.failed) w.push_back(p.omega_m);
    std::sort(w.begin(), w.end());
    json out = {{"t_s", t}, {"expected_spacing_rad_s", P}, {"windows", json::array()}, {"detected", false}};
    std::size_t end = 0;
    while (end + 1 < w.size() && w[end + 1] - w[end] < 0.25 * P) ++end;
    if (end + 1 < 8) {
        out["note"] = "sweep too coarse for ringing detection at this t; run a denser sweep";
        return out;
    }
    const double dense_lo = w.front(), dense_hi = w[end];
    out["dense_band_rad_s"] = {dense_lo, dense_hi};
    const double width = std::max(8.0 * P, 8.0 * (w[1] - w[0]));
    for (double a = dense_lo; a < dense_hi; a += 0.5 * width) {
        RingingOptions opt;
        opt.band_lo = a;
        opt.band_hi = std::min(a + width, dense_hi);
        try {
            const RingingReport r = detect_ringing(est, t, opt);
            out["windows"].push_back({{"band_rad_s", {r.band_lo, r.band_hi}},
                                      {"detected", r.detected},
                                      {"spacing_rad_s", r.spacing},
                                      {"match_ratio", r.match_ratio},
                                      {"crossings", r.crossings},
                                      {"relative_amplitude", r.relative_amplitude}});
            if (r.detected) out["detected"] = true;
        } catch (const CapabilityError&) {
        }
        if (opt.band_hi >= dense_hi) break;
    }
    return out;
}

}  // namespace

void cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
    const ScenarioConfig cfg = load_config(opt.config);
    Scenario scenario = build_scenario(cfg);
    if (opt.tolerance) {
        if (!(*opt.tolerance > 0.0)) throw UsageError("--tolerance must be > 0");
        scenario.quadrature.rel_tol = *opt.tolerance;
    }
    const std::uint64_t seed = opt.seed.value_or(cfg.seed);
    const SweepPlan plan = build_plan(cfg);
    const MeasurementDataset ds = run_campaign(scenario, plan, build_noise(cfg), seed, std::max(1u, opt.threads));

    {
        auto out = open_output(opt.out, "dataset.csv");
        write_dataset_csv(out, ds);
    }

    json failures = json::array();
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& r = ds.records[i];
        if (r.failed) failures.push_back({{"index", i}, {"omega_m_rad_s", r.omega_m}, {"t_s", r.t}, {"message", r.failure}});
    }
    json warnings = json::array();
    std::set<std::string> seen;
    bool regime_ok = true;
    double vmin = INFINITY, vmax = 0.0;
    for (const auto& pt : plan.points) {
        const RangeCheck rc = validate_operating_range(pt.omega_m);
        if (!rc.ok && seen.insert(rc.message).second) warnings.push_back(rc.message);
        regime_ok = regime_ok && background_budget(scenario, pt.omega_m).regime_ok;
        const double v = voltage_for_frequency(scenario.trap, scenario.particle, pt.omega_m);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!regime_ok) warnings.push_back("background heating exceeds 100 phonon/s somewhere above 2 pi 1e3 rad/s");

    json summary = {{"fingerprint", ds.fingerprint},
                    {"seed", seed},
                    {"n0", ds.n0},
                    {"channel", std::string(channel_name(scenario.channel))},
                    {"points", ds.records.size()},
                    {"failed", failures.size()},
                    {"failures", failures},
                    {"background_regime_ok", regime_ok},
                    {"trap_voltage_range_V", {vmin, vmax}},
                    {"quadrature_rel_tol", scenario.quadrature.rel_tol},
                    {"warnings", warnings}};
    write_json(opt.out, "summary.json", summary);
    log << "simulated " << ds.records.size() << " points (" << failures.size() << " failed), fingerprint "
        << ds.fingerprint << '\n';
}

void cmd_reconstruct(const ReconstructOptions& opt, std::ostream& log) {
    const ScenarioConfig cfg = load_config(opt.config);
    Scenario scenario = build_scenario(cfg);
    if (opt.tolerance) scenario.quadrature.rel_tol = *opt.tolerance;
    std::ifstream in(opt.dataset);
    if (!in) throw std::ios_base::failure("cannot read " + opt.dataset);
    const MeasurementDataset ds = read_dataset_csv(in);
    const SpectrumEstimate est = reconstruct_sweep(ds, scenario, cfg.baseline);

    {
        auto out = open_output(opt.out, "estimate.csv");
        write_estimate_csv(out, est, scenario.fingerprint);
    }

    std::set<double> times;
    for (const auto& p : est.points) times.insert(p.t);
    json ringing = {{"fingerprint", scenario.fingerprint}, {"per_time", json::array()}};
    for (double t : times) ringing["per_time"].push_back(scan_ringing(est, t));
    write_json(opt.out, "ringing.json", ringing);

    if (!scenario.spectrum.empty()) {
        auto out = open_output(opt.out, "comparison.csv");
        out << "# fingerprint=" << scenario.fingerprint << " units=omega_m:rad/s,t:s,c:PSD\n";
        out << "omega_m_rad_s,t_s,c_true,c_hat,rel_error\n";
        for (const auto& p : est.points) {
            const double truth = scenario.spectrum(p.omega_m);
            const double rel = truth != 0.0 ? (p.c_hat - truth) / truth : NAN;
            out << format_double(p.omega_m) << ',' << format_double(p.t) << ',' << format_double(truth) << ','
                << format_double(p.failed ? NAN : p.c_hat) << ',' << format_double(p.failed ? NAN : rel) << '\n';
        }
    }
    log << "reconstructed " << est.points.size() << " points across " << times.size() << " measurement time(s)\n";
}

void cmd_oracle(const OracleOptions& opt, std::ostream& log) {
    FrequencyUnit unit;
    if (opt.unit == "Hz")
        unit = FrequencyUnit::Hertz;
    else if (opt.unit == "rad/s")
        unit = FrequencyUnit::RadPerSecond;
    else
        throw UsageError("--unit must be Hz or rad/s");
    if (!(opt.lo > 0.0 && opt.hi > opt.lo) || opt.points < 2) throw UsageError("need 0 < lo < hi and points >= 2");
    if (opt.times.empty()) throw UsageError("need at least one --t");
    const double mass = sphere_mass(opt.radius, opt.density);
    const double lo = to_rad_per_s(opt.lo, unit), hi = to_rad_per_s(opt.hi, unit);
    std::vector<double> grid;
    for (std::size_t i = 0; i < opt.points; ++i)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(opt.points - 1)));

    if (opt.which == "gaussian") {
        GaussianOracleInput base;
        base.strength = opt.strength;
        base.center = to_rad_per_s(opt.center, unit);
        base.width = to_rad_per_s(opt.width, unit);
        base.mass = mass;
        try {
            validate(base);
        } catch (const ValidationError& e) {
            throw UsageError(e.what());
        }
        // The line centre itself is always tabulated.
        grid.push_back(base.center);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        auto out = open_output(opt.out, "oracle_gaussian.csv");
        out << "# oracle=gaussian eta=" << format_double(base.strength) << " nu0_rad_s=" << format_double(base.center)
            << " gamma_rad_s=" << format_double(base.width) << " mass_kg=" << format_double(mass)
            << " units=omega_m:rad/s,t:s,n:phonons\n";
        out << "omega_m_rad_s,t_s,n_oracle,n_narrow_limit,n_broad_limit\n";
        for (double t : opt.times) {
            for (double w : grid) {
                GaussianOracleInput in = base;
                in.omega_m = w;
                in.t = t;
                double narrow = NAN, broad = NAN;
                if (in.width * t < 0.05) narrow = gaussian_narrow_closed_form(in);
                if (in.width * t > 20.0) broad = gaussian_limit_broad(in);
                out << format_double(w) << ',' << format_double(t) << ',' << format_double(gaussian_Nt(in)) << ','
                    << format_double(narrow) << ',' << format_double(broad) << '\n';
            }
        }
    } else if (opt.which == "white") {
        auto out = open_output(opt.out, "oracle_white.csv");
        out << "# oracle=white D_p=" << format_double(opt.strength) << " mass_kg=" << format_double(mass)
            << " n0=" << format_double(opt.n0) << " units=omega_m:rad/s,n:phonons\n";
        out << "omega_m_rad_s";
        for (double t : opt.times) out << ",n_t=" << format_double(t);
        out << '\n';
        for (double w : grid) {
            out << format_double(w);
            for (double t : opt.times) out << ',' << format_double(white_noise_nt(opt.strength, mass, w, t, opt.n0));
            out << '\n';
        }
    } else {
        throw UsageError("oracle must be 'gaussian' or 'white'");
    }
    log << "wrote " << opt.which << " oracle table to " << opt.out << '\n';
}

void cmd_validate(const std::string& config, std::ostream& log) {
    const ScenarioConfig cfg = load_config(config);
    const Scenario s = build_scenario(cfg);
    const SweepPlan plan = build_plan(cfg);
    log << "ok fingerprint=" << s.fingerprint << " channel=" << channel_name(s.channel)
        << " points=" << plan.points.size() << '\n';
    for (double w : {plan.points.front().omega_m, plan.points.back().omega_m}) {
        const RangeCheck rc = validate_operating_range(w);
        if (!rc.ok) log << "warning: " << rc.message << '\n';
    }
}

int exit_code_for_current_exception(std::ostream& err) {
    try {
        throw;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << '\n';
        return kExitIntegrity;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace phonospec
