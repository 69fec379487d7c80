#include "phonospec/io.hpp"

#include "phonospec/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace phonospec {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

void write_dataset_csv(std::ostream& out, const MeasurementDataset& ds) {
    out << "# fingerprint=" << ds.fingerprint << " seed=" << ds.seed << " n0=" << format_double(ds.n0)
        << " units=omega_m:rad/s,t:s,n:phonons\n";
    out << "omega_m_rad_s,t_s,n_true,n_obs,sigma_n,reps\n";
    for (const auto& r : ds.records) {
        out << format_double(r.omega_m) << ',' << format_double(r.t) << ',' << format_double(r.n_true) << ','
            << format_double(r.n_obs) << ',' << format_double(r.sigma_n) << ',' << r.repetitions << '\n';
    }
}

namespace {

double parse_double(const std::string& s, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ValidationError("dataset: bad number '" + s + "' on line " + std::to_string(line));
    return v;
}

}  // namespace

MeasurementDataset read_dataset_csv(std::istream& in) {
    MeasurementDataset ds;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream fields(line.substr(1));
            std::string kv;
            while (fields >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
                if (key == "fingerprint") ds.fingerprint = value;
                if (key == "seed") ds.seed = std::strtoull(value.c_str(), nullptr, 10);
                if (key == "n0") ds.n0 = parse_double(value, lineno);
            }
            continue;
        }
        if (!header_seen) {
            if (line.rfind("omega_m_rad_s", 0) != 0)
                throw ValidationError("dataset: missing column header on line " + std::to_string(lineno));
            header_seen = true;
            continue;
        }
        std::vector<std::string> cols;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cols.push_back(cell);
        if (cols.size() != 6)
            throw ValidationError("dataset: expected 6 columns on line " + std::to_string(lineno));
        MeasurementRecord r;
        r.omega_m = parse_double(cols[0], lineno);
        r.t = parse_double(cols[1], lineno);
        r.n_true = parse_double(cols[2], lineno);
        r.n_obs = parse_double(cols[3], lineno);
        r.sigma_n = parse_double(cols[4], lineno);
        r.repetitions = static_cast<int>(parse_double(cols[5], lineno));
        r.failed = !std::isfinite(r.n_obs);
        ds.records.push_back(r);
    }
    return ds;
}

void write_estimate_csv(std::ostream& out, const SpectrumEstimate& est, const std::string& fingerprint) {
    out << "# fingerprint=" << fingerprint << " calibration=" << format_double(est.calibration)
        << " units=omega_m:rad/s,c_hat:PSD,resolution:rad/s,t:s\n";
    out << "omega_m_rad_s,c_hat,resolution_rad_s,sigma_c,t_s\n";
    for (const auto& p : est.points) {
        out << format_double(p.omega_m) << ',' << format_double(p.failed ? NAN : p.c_hat) << ','
            << format_double(p.resolution) << ',' << format_double(p.sigma_c) << ',' << format_double(p.t)
            << '\n';
    }
}

}  // namespace phonospec
