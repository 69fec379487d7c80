// phonospec - simulate heating campaigns and reconstruct noise spectra

#include "phonospec/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace phonospec;

int main(int argc, char** argv) {
    CLI::App app{"Noise spectroscopy with a levitated oscillator: forward model, campaigns, reconstruction"};
    app.require_subcommand(1);

    SimulateOptions sim;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "run a measurement campaign from a scenario file");
    simulate->add_option("--config", sim.config, "scenario file (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", sim.out, "output directory");
    auto* seed_opt = simulate->add_option("--seed", seed, "override the config seed");
    simulate->add_option("--threads", sim.threads, "worker threads")->check(CLI::PositiveNumber);
    double sim_tol = 0.0;
    auto* sim_tol_opt = simulate->add_option("--tolerance", sim_tol, "quadrature relative tolerance");

    ReconstructOptions rec;
    auto* reconstruct = app.add_subcommand("reconstruct", "invert a dataset into a spectrum estimate");
    reconstruct->add_option("--dataset", rec.dataset, "dataset CSV from simulate")->required()->check(CLI::ExistingFile);
    reconstruct->add_option("--config", rec.config, "scenario file the dataset came from")->required()->check(CLI::ExistingFile);
    reconstruct->add_option("--out", rec.out, "output directory");
    double rec_tol = 0.0;
    auto* rec_tol_opt = reconstruct->add_option("--tolerance", rec_tol, "quadrature relative tolerance");

    OracleOptions orc;
    auto* oracle = app.add_subcommand("oracle", "tabulate closed-form reference solutions");
    oracle->add_option("which", orc.which, "gaussian or white")->required()->check(CLI::IsMember({"gaussian", "white"}));
    oracle->add_option("--out", orc.out, "output directory");
    oracle->add_option("--unit", orc.unit, "unit of the frequency arguments (Hz or rad/s)");
    oracle->add_option("--strength", orc.strength, "eta for gaussian, D_p for white");
    oracle->add_option("--center", orc.center, "line centre nu0");
    oracle->add_option("--width", orc.width, "line width gamma");
    oracle->add_option("--radius", orc.radius, "sphere radius, m");
    oracle->add_option("--density", orc.density, "sphere density, kg/m^3");
    oracle->add_option("--t", orc.times, "measurement time(s), s");
    oracle->add_option("--lo", orc.lo, "lowest omega_m");
    oracle->add_option("--hi", orc.hi, "highest omega_m");
    oracle->add_option("--points", orc.points, "grid points");
    oracle->add_option("--n0", orc.n0, "initial phonons (white)");

    std::string validate_config;
    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("--config", validate_config, "scenario file (JSON)")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    if (*seed_opt) sim.seed = seed;
    if (*sim_tol_opt) sim.tolerance = sim_tol;
    if (*rec_tol_opt) rec.tolerance = rec_tol;

    if (*simulate) return run_command([&] { cmd_simulate(sim, std::cout); }, std::cerr);
    if (*reconstruct) return run_command([&] { cmd_reconstruct(rec, std::cout); }, std::cerr);
    if (*oracle) return run_command([&] { cmd_oracle(orc, std::cout); }, std::cerr);
    return run_command([&] { cmd_validate(validate_config, std::cout); }, std::cerr);
}
