// gbbm: command-line driver for the fifth-order KdV-BBM radius-of-analyticity lab.
//
//   gbbm simulate <config.json>
//   gbbm continuation <config.json> --t-star X
//   gbbm decay-law <config.json>
//   gbbm verify
//   gbbm gen-data <kind> --n-modes N --length L --out FILE [...]
//
// Exit codes: 0 success, 1 failed check or runtime error, 2 bad arguments or config.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "gbbm/config.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/gevrey.hpp"
#include "gbbm/tracker.hpp"
#include "gbbm/verification.hpp"

namespace fs = std::filesystem;
using namespace gbbm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

// Decay-law window: no faster than 1/t (with tolerance) and no growth.
constexpr double kMinExponent = -1.15;
constexpr double kMaxExponent = 0.0;

void write_trajectory(const RunConfig& cfg, const RadiusTrajectory& traj, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    const fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_csv(os, traj);
    std::cout << "wrote " << path.string() << " (" << traj.rows.size() << " rows)\n";
}

int cmd_simulate(const std::string& config_path) {
    const RunConfig cfg = load_config(config_path);
    const SimulationResult res = simulate(cfg);
    write_trajectory(cfg, res.trajectory, "trajectory.csv");

    const fs::path snap = fs::path(cfg.output_dir) / "final.gbbm";
    write_snapshot_file(snap.string(), inverse(res.final_state.eta_hat));
    std::ofstream meta(fs::path(cfg.output_dir) / "final.meta");
    write_metadata(meta, res.final_state, cfg);
    std::cout << "wrote " << snap.string() << " and final.meta\n";
    return kExitOk;
}

int cmd_continuation(const std::string& config_path, double t_star) {
    const RunConfig cfg = load_config(config_path);
    const ContinuationResult res = continuation_run(cfg, t_star);
    std::cout << std::setprecision(10) << "sigma        " << res.sigma << '\n'
              << "segments     " << res.segments << '\n'
              << "max E_sigma/E_sigma0[v0]  " << res.max_ratio << '\n'
              << "keybound_ok  " << (res.keybound_ok ? "true" : "false") << '\n';
    if (!res.keybound_ok) {
        std::cout << "key bound first violated at t=" << res.fail_time << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_decay_law(const std::string& config_path) {
    const RunConfig cfg = load_config(config_path);
    const DecayLawResult res = decay_law_experiment(cfg);
    write_trajectory(cfg, res.trajectory, "decay_law.csv");
    std::cout << std::setprecision(10) << "c_hat          " << res.c_hat << '\n'
              << "exponent_hat   " << res.exponent_hat << '\n'
              << "inf t*sigma    " << res.inf_t_sigma << '\n'
              << "tail samples   " << res.tail_samples << '\n';
    const bool ok = res.exponent_hat >= kMinExponent && res.exponent_hat <= kMaxExponent &&
                    res.inf_t_sigma > 0.0;
    std::cout << (ok ? "consistent" : "INCONSISTENT") << " with sigma(t) >= c/t\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify() {
    const auto lines = run_verify_suite(std::cout);
    int failed = 0;
    for (const auto& l : lines) failed += l.pass ? 0 : 1;
    std::cout << lines.size() - failed << "/" << lines.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fifth-order KdV-BBM pseudospectral simulator and radius-of-analyticity lab"};
    app.require_subcommand(1);

    std::string config_path;
    double t_star = 0.0;

    auto* simulate_cmd = app.add_subcommand("simulate", "evolve a config and write the trajectory CSV");
    simulate_cmd->add_option("config", config_path, "JSON run config")->required();

    auto* cont_cmd = app.add_subcommand("continuation", "run the sigma-adjusted continuation check");
    cont_cmd->add_option("config", config_path, "JSON run config")->required();
    cont_cmd->add_option("--t-star", t_star, "target time T*")->required();

    auto* decay_cmd = app.add_subcommand("decay-law", "fit sigma_hat(t) ~ c t^p on the tail");
    decay_cmd->add_option("config", config_path, "JSON run config")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the property suite");

    std::string kind;
    int n_modes = 256;
    std::string length_text = "2pi";
    double sigma0 = 0.5;
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    double width = 2.0;
    int modes = 8;
    std::string out_path;
    auto* gen_cmd = app.add_subcommand("gen-data", "write an initial-data snapshot");
    gen_cmd->add_option("kind", kind, "poisson_kernel | gaussian_bump | mode_sum")->required();
    gen_cmd->add_option("--n-modes", n_modes, "grid size");
    gen_cmd->add_option("--length", length_text, "domain length, e.g. 64pi");
    gen_cmd->add_option("--sigma0", sigma0, "strip half-width");
    gen_cmd->add_option("--amplitude", amplitude, "amplitude");
    gen_cmd->add_option("--seed", seed, "phase seed (mode_sum)");
    gen_cmd->add_option("--width", width, "width (gaussian_bump)");
    gen_cmd->add_option("--modes", modes, "number of modes (mode_sum)");
    gen_cmd->add_option("--out", out_path, "output snapshot file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*simulate_cmd) return cmd_simulate(config_path);
        if (*cont_cmd) return cmd_continuation(config_path, t_star);
        if (*decay_cmd) return cmd_decay_law(config_path);
        if (*verify_cmd) return cmd_verify();
        if (*gen_cmd) {
            RunConfig cfg;
            cfg.n_modes = n_modes;
            try {
                cfg.length = parse_length(length_text);
                cfg.data.kind = data_kind_from_string(kind);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kExitConfig;
            }
            cfg.data.sigma0 = sigma0;
            cfg.data.amplitude = amplitude;
            cfg.data.seed = seed;
            cfg.data.width = width;
            cfg.data.modes = modes;
            const GridPtr grid = make_grid(cfg);
            write_snapshot_file(out_path, inverse(initial_data(cfg, grid)));
            std::cout << "wrote " << out_path << '\n';
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}
