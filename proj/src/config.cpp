#include "phonospec/config.hpp"

#include "phonospec/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace phonospec {

using json = nlohmann::json;

namespace {

// Typed access to one JSON object with errors addressed by dotted path.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
    const json& raw(const std::string& key) const { return j_.at(key); }

    void allow(std::initializer_list<const char*> keys) const {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [k, v] : j_.items())
            if (!ok.count(k)) throw ConfigError(at(k), "unknown field");
    }

    double number(const std::string& key) const {
        if (!has(key)) throw ConfigError(at(key), "required field is missing");
        const json& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(at(key), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ConfigError(at(key), "expected a finite number");
        return x;
    }
    double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

    double positive(const std::string& key, double fallback) const {
        const double x = number(key, fallback);
        if (!(x > 0.0)) throw ConfigError(at(key), "must be > 0");
        return x;
    }
    double nonneg(const std::string& key, double fallback) const {
        const double x = number(key, fallback);
        if (!(x >= 0.0)) throw ConfigError(at(key), "must be >= 0");
        return x;
    }

    long long integer(const std::string& key, long long fallback) const {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
        return v.get<long long>();
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(at(key), "expected a string");
        return v.get<std::string>();
    }

    template <class E>
    E choice(const std::string& key, E fallback, std::initializer_list<std::pair<const char*, E>> options) const {
        if (!has(key)) return fallback;
        const std::string s = text(key, "");
        std::string names;
        for (const auto& [name, value] : options) {
            if (s == name) return value;
            names += names.empty() ? name : std::string(", ") + name;
        }
        throw ConfigError(at(key), "unknown value '" + s + "' (expected one of " + names + ")");
    }

    Node child(const std::string& key) const { return Node(j_.at(key), at(key)); }

private:
    const json& j_;
    std::string path_;
};

const char* unit_name(FrequencyUnit u) { return u == FrequencyUnit::Hertz ? "Hz" : "rad/s"; }
const char* interp_name(Interpolation i) { return i == Interpolation::LogLog ? "loglog" : "linear"; }
const char* extrap_name(Extrapolation e) { return e == Extrapolation::ConstantEdge ? "constant_edge" : "zero"; }
const char* policy_name(TimePolicy p) { return p == TimePolicy::Fixed ? "fixed" : "inverse"; }
const char* noise_name(NoiseModel::Kind k) {
    switch (k) {
        case NoiseModel::Kind::Off: return "off";
        case NoiseModel::Kind::Thermal: return "thermal";
        case NoiseModel::Kind::Fixed: return "fixed";
    }
    return "off";
}

SpectrumEntry parse_entry(const Node& n) {
    const std::string kind = n.text("kind", "");
    SpectrumEntry e;
    if (kind == "white") {
        n.allow({"kind", "level"});
        e.component = WhiteNoise{n.nonneg("level", 0.0)};
    } else if (kind == "gaussian_peak") {
        n.allow({"kind", "strength", "center", "width"});
        GaussianPeak g;
        g.strength = n.nonneg("strength", 0.0);
        g.center = n.nonneg("center", 0.0);
        g.width = n.positive("width", 0.0);
        e.component = g;
    } else if (kind == "power_law") {
        n.allow({"kind", "prefactor", "exponent", "cutoff"});
        PowerLaw p;
        p.prefactor = n.nonneg("prefactor", 0.0);
        p.exponent = n.number("exponent");
        p.cutoff = n.positive("cutoff", 0.0);
        e.component = p;
    } else if (kind == "tabulated") {
        n.allow({"kind", "points", "file", "interpolation", "extrapolation"});
        Tabulated t;
        t.interpolation = n.choice("interpolation", Interpolation::LogLog,
                                   {{"loglog", Interpolation::LogLog}, {"linear", Interpolation::Linear}});
        t.extrapolation = n.choice("extrapolation", Extrapolation::ConstantEdge,
                                   {{"constant_edge", Extrapolation::ConstantEdge}, {"zero", Extrapolation::Zero}});
        if (n.has("file") == n.has("points"))
            throw ConfigError(n.at("points"), "give exactly one of 'points' or 'file'");
        if (n.has("file")) {
            e.file = n.text("file", "");
        } else {
            const json& pts = n.raw("points");
            if (!pts.is_array()) throw ConfigError(n.at("points"), "expected an array of [frequency, value] pairs");
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const json& row = pts[i];
                const std::string p = n.at("points") + "[" + std::to_string(i) + "]";
                if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
                    throw ConfigError(p, "expected [frequency, value]");
                t.nu.push_back(row[0].get<double>());
                t.value.push_back(row[1].get<double>());
            }
        }
        e.component = t;
    } else {
        throw ConfigError(n.at("kind"), "unknown spectrum kind '" + kind +
                                            "' (expected white, gaussian_peak, power_law or tabulated)");
    }
    return e;
}

json entry_json(const SpectrumEntry& e) {
    json j;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WhiteNoise>) {
                j = {{"kind", "white"}, {"level", c.level}};
            } else if constexpr (std::is_same_v<T, GaussianPeak>) {
                j = {{"kind", "gaussian_peak"}, {"strength", c.strength}, {"center", c.center}, {"width", c.width}};
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                j = {{"kind", "power_law"}, {"prefactor", c.prefactor}, {"exponent", c.exponent}, {"cutoff", c.cutoff}};
            } else {
                j = {{"kind", "tabulated"},
                     {"interpolation", interp_name(c.interpolation)},
                     {"extrapolation", extrap_name(c.extrapolation)}};
                if (!e.file.empty()) {
                    j["file"] = e.file;
                } else {
                    json pts = json::array();
                    for (std::size_t i = 0; i < c.nu.size(); ++i) pts.push_back({c.nu[i], c.value[i]});
                    j["points"] = pts;
                }
            }
        },
        e.component);
    return j;
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["units"] = {{"frequency", unit_name(c.frequency_unit)}};
    j["particle"] = {{"radius", c.radius}, {"density", c.density}, {"charge_count", c.charge_count}};
    json trap = {{"geometry", c.geometry}, {"drive_frequency", c.drive_frequency},
                 {"endcap_distance", c.endcap_distance}};
    if (c.voltage) trap["voltage"] = *c.voltage;
    if (c.target_frequency) trap["target_frequency"] = *c.target_frequency;
    j["trap"] = trap;

    json env = {{"initial_phonons", c.initial_phonons}};
    if (c.gas) {
        json g = {{"enabled", c.gas->enabled}, {"pressure", c.gas->pressure}, {"temperature", c.gas->temperature}};
        if (c.gas->species.empty())
            g["m_g"] = c.gas->molecular_mass;
        else
            g["m_g"] = c.gas->species;
        env["gas"] = g;
    }
    if (c.blackbody) {
        json b = {{"enabled", c.blackbody->enabled},
                  {"temperature", c.blackbody->temperature},
                  {"im_permittivity", c.blackbody->im_permittivity}};
        if (c.blackbody->density) b["density"] = *c.blackbody->density;
        env["blackbody"] = b;
    }
    if (c.efield) {
        env["efield"] = {{"enabled", c.efield->enabled}, {"g_E", c.efield->g_E},     {"alpha", c.efield->alpha},
                         {"beta", c.efield->beta},       {"chi", c.efield->chi},     {"distance", c.efield->distance},
                         {"temperature", c.efield->temperature}};
    }
    j["environment"] = env;
    j["channel"] = std::string(channel_name(c.channel));
    json spec = json::array();
    for (const auto& e : c.spectrum) spec.push_back(entry_json(e));
    j["spectrum"] = spec;
    if (c.csl) j["csl"] = {{"lambda", c.csl->lambda}, {"r_C", c.csl->r_C}, {"m0", c.csl->m0}};
    j["sweep"] = {{"lo", c.sweep.lo},
                  {"hi", c.sweep.hi},
                  {"points", c.sweep.points},
                  {"times", c.sweep.times},
                  {"time_policy", policy_name(c.sweep.policy)},
                  {"repetitions", c.sweep.repetitions}};
    j["noise"] = {{"model", noise_name(c.noise)}, {"sigma", c.noise_sigma}};
    j["seed"] = c.seed;
    j["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                       {"nodes_per_period", c.quadrature.nodes_per_period},
                       {"tail_fraction", c.quadrature.tail_fraction},
                       {"min_core_periods", c.quadrature.min_core_periods},
                       {"max_exact_periods", c.quadrature.max_exact_periods},
                       {"max_depth", c.quadrature.max_depth}};
    j["reconstruction"] = {{"baseline", c.baseline == Baseline::Modeled ? "modeled" : "fitted"}};
    return j;
}

std::string resolve(const std::string& base, const std::string& file) {
    std::filesystem::path p(file);
    if (p.is_absolute() || base.empty()) return p.string();
    return (std::filesystem::path(base) / p).string();
}

Tabulated load_table(const ScenarioConfig& c, const SpectrumEntry& e, std::size_t index) {
    const auto& t = std::get<Tabulated>(e.component);
    const std::string path = resolve(c.base_dir, e.file);
    std::ifstream in(path);
    const std::string where = "spectrum[" + std::to_string(index) + "].file";
    if (!in) throw ConfigError(where, "cannot open '" + path + "'");
    try {
        // abscissae stay in the config's unit here; conversion happens at build time
        return read_tabulated_csv(in, FrequencyUnit::RadPerSecond, t.interpolation, t.extrapolation);
    } catch (const ValidationError& err) {
        throw ConfigError(where, err.what());
    }
}

}  // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
    ScenarioConfig a = *this, b = o;
    a.base_dir.clear();
    b.base_dir.clear();
    return to_json(a) == to_json(b);
}

ScenarioConfig parse_config(const std::string& text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("not valid JSON: ") + e.what());
    }
    const Node root(doc, "");
    root.allow({"units", "particle", "trap", "environment", "channel", "spectrum", "csl", "sweep", "noise",
                "seed", "quadrature", "reconstruction"});

    ScenarioConfig c;
    c.base_dir = base_dir;
    if (root.has("units")) {
        const Node u = root.child("units");
        u.allow({"frequency"});
        c.frequency_unit = u.choice("frequency", FrequencyUnit::Hertz,
                                    {{"Hz", FrequencyUnit::Hertz}, {"rad/s", FrequencyUnit::RadPerSecond}});
    }

    if (!root.has("particle")) throw ConfigError("particle", "required block is missing");
    {
        const Node p = root.child("particle");
        p.allow({"radius", "density", "charge_count"});
        c.radius = p.positive("radius", c.radius);
        c.density = p.positive("density", c.density);
        const long long q = p.integer("charge_count", c.charge_count);
        if (q < 0) throw ConfigError(p.at("charge_count"), "must be >= 0");
        c.charge_count = static_cast<long>(q);
    }

    if (!root.has("trap")) throw ConfigError("trap", "required block is missing");
    {
        const Node t = root.child("trap");
        t.allow({"voltage", "target_frequency", "geometry", "drive_frequency", "endcap_distance"});
        if (t.has("voltage") == t.has("target_frequency"))
            throw ConfigError(t.at("voltage"), "give exactly one of 'voltage' or 'target_frequency'");
        if (t.has("voltage")) c.voltage = t.nonneg("voltage", 0.0);
        if (t.has("target_frequency")) c.target_frequency = t.nonneg("target_frequency", 0.0);
        c.geometry = t.positive("geometry", c.geometry);
        if (c.geometry > 1.0) throw ConfigError(t.at("geometry"), "must lie in (0, 1]");
        c.drive_frequency = t.positive("drive_frequency", c.drive_frequency);
        c.endcap_distance = t.positive("endcap_distance", c.endcap_distance);
    }

    if (root.has("environment")) {
        const Node env = root.child("environment");
        env.allow({"initial_phonons", "gas", "blackbody", "efield"});
        c.initial_phonons = env.nonneg("initial_phonons", c.initial_phonons);
        if (env.has("gas")) {
            const Node g = env.child("gas");
            g.allow({"enabled", "pressure", "temperature", "m_g"});
            GasConfig gc;
            gc.enabled = g.boolean("enabled", true);
            gc.pressure = g.nonneg("pressure", gc.pressure);
            gc.temperature = g.positive("temperature", gc.temperature);
            if (!g.has("m_g"))
                throw ConfigError(g.at("m_g"), "required field is missing (mass in kg, or one of H2, He, N2)");
            if (g.raw("m_g").is_string()) {
                gc.species = g.text("m_g", "");
                const auto m = gas_species_mass(gc.species);
                if (!m) throw ConfigError(g.at("m_g"), "unknown gas preset '" + gc.species + "' (expected H2, He or N2)");
                gc.molecular_mass = *m;
            } else {
                gc.molecular_mass = g.positive("m_g", 0.0);
            }
            c.gas = gc;
        }
        if (env.has("blackbody")) {
            const Node b = env.child("blackbody");
            b.allow({"enabled", "temperature", "im_permittivity", "density"});
            BlackbodyConfig bc;
            bc.enabled = b.boolean("enabled", true);
            bc.temperature = b.nonneg("temperature", bc.temperature);
            bc.im_permittivity = b.nonneg("im_permittivity", bc.im_permittivity);
            if (b.has("density")) bc.density = b.positive("density", 0.0);
            c.blackbody = bc;
        }
        if (env.has("efield")) {
            const Node e = env.child("efield");
            e.allow({"enabled", "g_E", "alpha", "beta", "chi", "gamma", "distance", "temperature"});
            EFieldConfig ec;
            ec.enabled = e.boolean("enabled", true);
            ec.g_E = e.nonneg("g_E", ec.g_E);
            ec.alpha = e.number("alpha", ec.alpha);
            ec.beta = e.number("beta", ec.beta);
            if (e.has("chi") && e.has("gamma"))
                throw ConfigError(e.at("gamma"), "'gamma' is an alias of 'chi'; give only one");
            ec.chi = e.number(e.has("gamma") ? "gamma" : "chi", ec.chi);
            ec.distance = e.positive("distance", ec.distance);
            ec.temperature = e.positive("temperature", ec.temperature);
            c.efield = ec;
        }
    }

    c.channel = root.choice("channel", CouplingChannel::ElectricField,
                            {{"efield", CouplingChannel::ElectricField},
                             {"force", CouplingChannel::DirectForce},
                             {"csl", CouplingChannel::Csl}});

    if (root.has("spectrum")) {
        const json& arr = root.raw("spectrum");
        if (!arr.is_array()) throw ConfigError("spectrum", "expected an array of components");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const Node n(arr[i], "spectrum[" + std::to_string(i) + "]");
            c.spectrum.push_back(parse_entry(n));
        }
    }

    if (root.has("csl")) {
        const Node n = root.child("csl");
        n.allow({"lambda", "r_C", "m0"});
        CslConfig cc;
        cc.lambda = n.nonneg("lambda", cc.lambda);
        cc.r_C = n.positive("r_C", cc.r_C);
        cc.m0 = n.positive("m0", cc.m0);
        c.csl = cc;
    }

    if (root.has("sweep")) {
        const Node s = root.child("sweep");
        s.allow({"lo", "hi", "points", "times", "time_policy", "repetitions"});
        c.sweep.lo = s.positive("lo", c.sweep.lo);
        c.sweep.hi = s.positive("hi", c.sweep.hi);
        if (!(c.sweep.hi > c.sweep.lo)) throw ConfigError(s.at("hi"), "must exceed sweep.lo");
        const long long n = s.integer("points", static_cast<long long>(c.sweep.points));
        if (n < 2) throw ConfigError(s.at("points"), "must be >= 2");
        c.sweep.points = static_cast<std::size_t>(n);
        if (s.has("times")) {
            const json& ts = s.raw("times");
            c.sweep.times.clear();
            if (ts.is_number()) {
                c.sweep.times.push_back(ts.get<double>());
            } else if (ts.is_array() && !ts.empty()) {
                for (const auto& v : ts) {
                    if (!v.is_number()) throw ConfigError(s.at("times"), "expected numbers");
                    c.sweep.times.push_back(v.get<double>());
                }
            } else {
                throw ConfigError(s.at("times"), "expected a number or a non-empty array");
            }
            for (double t : c.sweep.times)
                if (!(t > 0.0)) throw ConfigError(s.at("times"), "measurement times must be > 0");
        }
        c.sweep.policy = s.choice("time_policy", TimePolicy::Fixed,
                                  {{"fixed", TimePolicy::Fixed}, {"inverse", TimePolicy::InverseFrequency}});
        const long long m = s.integer("repetitions", 1);
        if (m < 1) throw ConfigError(s.at("repetitions"), "must be >= 1");
        c.sweep.repetitions = static_cast<int>(m);
    }

    if (root.has("noise")) {
        const Node n = root.child("noise");
        n.allow({"model", "sigma"});
        c.noise = n.choice("model", NoiseModel::Kind::Off,
                           {{"off", NoiseModel::Kind::Off},
                            {"thermal", NoiseModel::Kind::Thermal},
                            {"fixed", NoiseModel::Kind::Fixed}});
        c.noise_sigma = n.nonneg("sigma", 0.0);
    }

    if (root.has("seed")) {
        const json& s = root.raw("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            throw ConfigError("seed", "expected a nonnegative integer");
        c.seed = s.get<std::uint64_t>();
    }

    if (root.has("quadrature")) {
        const Node q = root.child("quadrature");
        q.allow({"rel_tol", "nodes_per_period", "tail_fraction", "min_core_periods", "max_exact_periods",
                 "max_depth"});
        c.quadrature.rel_tol = q.positive("rel_tol", c.quadrature.rel_tol);
        c.quadrature.nodes_per_period = q.number("nodes_per_period", c.quadrature.nodes_per_period);
        if (c.quadrature.nodes_per_period < 4.0) throw ConfigError(q.at("nodes_per_period"), "must be >= 4");
        c.quadrature.tail_fraction = q.positive("tail_fraction", c.quadrature.tail_fraction);
        c.quadrature.min_core_periods = static_cast<int>(q.integer("min_core_periods", c.quadrature.min_core_periods));
        if (c.quadrature.min_core_periods < 1) throw ConfigError(q.at("min_core_periods"), "must be >= 1");
        c.quadrature.max_exact_periods = q.positive("max_exact_periods", c.quadrature.max_exact_periods);
        c.quadrature.max_depth = static_cast<int>(q.integer("max_depth", c.quadrature.max_depth));
        if (c.quadrature.max_depth < 1) throw ConfigError(q.at("max_depth"), "must be >= 1");
    }

    if (root.has("reconstruction")) {
        const Node r = root.child("reconstruction");
        r.allow({"baseline"});
        c.baseline = r.choice("baseline", Baseline::Modeled, {{"modeled", Baseline::Modeled}, {"fitted", Baseline::Fitted}});
    }

    if (c.channel == CouplingChannel::ElectricField && !(c.efield && c.efield->enabled))
        throw ConfigError("environment.efield", "the efield channel needs an enabled E-field model");
    if (c.channel == CouplingChannel::Csl && !c.csl) throw ConfigError("csl", "the csl channel needs a csl block");

    // Catch component-level problems (unsorted tables, ...) with their path.
    for (std::size_t i = 0; i < c.spectrum.size(); ++i) {
        if (!c.spectrum[i].file.empty()) continue;
        try {
            validate(c.spectrum[i].component, i);
        } catch (const ValidationError& e) {
            throw ConfigError("spectrum[" + std::to_string(i) + "]", e.what());
        }
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path().string();
    return parse_config(buf.str(), dir.empty() ? "." : dir);
}

std::string serialize_config(const ScenarioConfig& c) { return to_json(c).dump(2) + "\n"; }

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.voltage = 1000.0;
    c.gas = GasConfig{true, 1e-9, 4.0, *gas_species_mass("H2"), "H2"};
    c.blackbody = BlackbodyConfig{};
    c.efield = EFieldConfig{};
    return c;
}

std::string fingerprint(const ScenarioConfig& c) {
    json j = to_json(c);
    j.erase("seed");
    for (std::size_t i = 0; i < c.spectrum.size(); ++i) {
        if (c.spectrum[i].file.empty()) continue;
        const Tabulated t = load_table(c, c.spectrum[i], i);
        json pts = json::array();
        for (std::size_t k = 0; k < t.nu.size(); ++k) pts.push_back({t.nu[k], t.value[k]});
        j["spectrum"][i]["points"] = pts;
        j["spectrum"][i].erase("file");
    }
    const std::string canon = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

Scenario build_scenario(const ScenarioConfig& c) {
    const FrequencyUnit u = c.frequency_unit;
    auto freq = [u](double x) { return to_rad_per_s(x, u); };

    Scenario s;
    s.units = Units::SI;
    s.particle = Particle{c.radius, c.density, c.charge_count};
    s.trap.geometry = c.geometry;
    s.trap.drive_frequency = freq(c.drive_frequency);
    s.trap.endcap_distance = c.endcap_distance;
    try {
        if (c.voltage)
            s.trap.voltage = *c.voltage;
        else
            s.trap.voltage = voltage_for_frequency(s.trap, s.particle, freq(c.target_frequency.value_or(0.0)));
    } catch (const ValidationError& e) {
        throw ConfigError("trap", e.what());
    }

    s.environment.initial_phonons = c.initial_phonons;
    if (c.gas && c.gas->enabled)
        s.environment.gas = GasParams{c.gas->pressure, c.gas->temperature, c.gas->molecular_mass};
    if (c.blackbody && c.blackbody->enabled)
        s.environment.blackbody =
            BlackbodyParams{c.blackbody->temperature, c.blackbody->im_permittivity, c.blackbody->density};
    if (c.efield && c.efield->enabled) {
        EFieldNoiseModel m;
        m.scale = c.efield->g_E;
        m.freq_exponent = c.efield->alpha;
        m.distance_exponent = c.efield->beta;
        m.temperature_exponent = c.efield->chi;
        m.distance = c.efield->distance;
        m.temperature = c.efield->temperature;
        s.environment.efield = m;
    }
    s.channel = c.channel;
    if (c.csl) s.csl = CslParams{c.csl->lambda, c.csl->r_C, c.csl->m0, 0.0};

    std::vector<SpectrumComponent> comps;
    for (std::size_t i = 0; i < c.spectrum.size(); ++i) {
        SpectrumComponent comp = c.spectrum[i].file.empty() ? c.spectrum[i].component
                                                            : SpectrumComponent{load_table(c, c.spectrum[i], i)};
        std::visit(
            [&](auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, GaussianPeak>) {
                    x.center = freq(x.center);
                    x.width = freq(x.width);
                } else if constexpr (std::is_same_v<T, PowerLaw>) {
                    // prefactor is quoted against frequency in the config's unit
                    x.prefactor *= std::pow(freq(1.0), x.exponent);
                    x.cutoff = freq(x.cutoff);
                } else if constexpr (std::is_same_v<T, Tabulated>) {
                    for (double& nu : x.nu) nu = freq(nu);
                }
            },
            comp);
        comps.push_back(std::move(comp));
    }
    try {
        s.spectrum = build_spectrum(std::move(comps));
    } catch (const ValidationError& e) {
        throw ConfigError("spectrum", e.what());
    }
    s.quadrature = c.quadrature;
    s.fingerprint = fingerprint(c);
    try {
        validate(s);
    } catch (const ValidationError& e) {
        throw ConfigError("<scenario>", e.what());
    }
    return s;
}

SweepPlan build_plan(const ScenarioConfig& c) {
    const double lo = to_rad_per_s(c.sweep.lo, c.frequency_unit);
    const double hi = to_rad_per_s(c.sweep.hi, c.frequency_unit);
    return plan_sweep(lo, hi, c.sweep.points, c.sweep.policy, c.sweep.times, c.sweep.repetitions);
}

NoiseModel build_noise(const ScenarioConfig& c) { return {c.noise, c.noise_sigma}; }

}  // namespace phonospec
