// commands.hpp - the CLI subcommands as library calls

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace phonospec {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitIntegrity = 3,
    kExitNumerical = 4,
    kExitIo = 5,
};

struct SimulateOptions {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::optional<double> tolerance;
};

struct ReconstructOptions {
    std::string dataset;
    std::string config;
    std::string out = ".";
    std::optional<double> tolerance;
};

struct OracleOptions {
    std::string which;        // gaussian | white
    std::string out = ".";
    std::string unit = "Hz";  // for the frequency arguments below
    double strength = 1e-30;  // eta (gaussian) or D_p (white)
    double center = 1e4;
    double width = 1e2;
    double radius = 50e-9;
    double density = 2300.0;
    std::vector<double> times{1e-2};
    double lo = 1e2;
    double hi = 1e6;
    std::size_t points = 101;
    double n0 = 0.0;
};

// Each command throws on failure; run_command maps exceptions to exit codes
// and prints the message to err.
void cmd_simulate(const SimulateOptions& opt, std::ostream& log);
void cmd_reconstruct(const ReconstructOptions& opt, std::ostream& log);
void cmd_oracle(const OracleOptions& opt, std::ostream& log);
void cmd_validate(const std::string& config, std::ostream& log);

template <class F>
int run_command(F&& f, std::ostream& err);

int exit_code_for_current_exception(std::ostream& err);

template <class F>
int run_command(F&& f, std::ostream& err) {
    try {
        f();
        return kExitOk;
    } catch (...) {
        return exit_code_for_current_exception(err);
    }
}

}  // namespace phonospec
