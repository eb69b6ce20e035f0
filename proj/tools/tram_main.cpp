#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tram/log.hpp"
#include "tram/pipeline.hpp"
#include "tram/qasm.hpp"

namespace {

// Exit codes: 0 success, 1 configuration error, 2 per-circuit failures
// occurred, 3 output invariant violation.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kCircuitFailures = 2;
constexpr int kInvariantViolation = 3;

void add_common_options(CLI::App* cmd, tram::PipelineConfig& cfg, std::string& router) {
    cmd->add_option("--device", cfg.device_path, "device calibration JSON")->required();
    cmd->add_option("--omega1", cfg.omega1, "partition weight for T2 similarity");
    cmd->add_option("--omega2", cfg.omega2, "partition weight for calibration reliability");
    cmd->add_option("--phi", cfg.phi, "time-weight exponent for the interaction heatmap");
    cmd->add_option("--eta", cfg.eta, "decoherence weight in the routing cost");
    cmd->add_option("--mu", cfg.mu, "look-ahead weight of the routing heuristic");
    cmd->add_option("--delta", cfg.delta, "decay increment per inserted SWAP");
    cmd->add_option("--epsilon", cfg.epsilon, "T2 normalization offset");
    cmd->add_option("--refine-budget", cfg.refine_budget,
                    "max accepted exchanges during placement refinement");
    cmd->add_option("--router", router, "tram | baseline | both");
    cmd->add_flag("--simulate", cfg.simulate, "report noisy-simulation fidelity");
    cmd->add_option("--seed", cfg.seed, "reserved; runs are deterministic");
    cmd->add_option("--out", cfg.out_dir, "output directory for routed circuits and reports");
    cmd->add_option("--dwell-time", cfg.dwell_time_us,
                    "dwell time in microseconds for the decoherence penalty "
                    "(default: depth * mean gate duration)");
    cmd->add_flag("!--no-decompose-swaps", cfg.decompose_swaps,
                  "keep SWAPs instead of decomposing into three CX");
    cmd->add_option("--decay-reset", cfg.decay_reset_interval,
                    "reset decay factors every N executed two-qubit gates (0 = never)");
    cmd->add_option("--density-cap", cfg.density_cap,
                    "max simulated qubits in density-matrix mode");
    cmd->add_option("--simulate-max-width", cfg.simulate_max_width,
                    "widest circuit to simulate; wider ones report null fidelity");
}

tram::RouterMode parse_router(const std::string& name) {
    if (name == "tram") return tram::RouterMode::Tram;
    if (name == "baseline") return tram::RouterMode::Baseline;
    if (name == "both") return tram::RouterMode::Both;
    throw CLI::ValidationError("--router must be tram, baseline or both");
}

int finish(const tram::PipelineConfig& cfg, const tram::DeviceModel& dev,
           const tram::RunReport& report) {
    tram::write_outputs(cfg, dev, report);
    std::cout << tram::report_to_table(report);
    return report.aggregates.failures > 0 ? kCircuitFailures : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise-aware quantum circuit transpiler"};
    app.require_subcommand(1);

    tram::PipelineConfig cfg;
    std::string router = "tram";
    std::string corpus_dir;
    std::string grid_spec = "0:1:0.25";
    bool allow_large_sweep = false;

    auto* compile = app.add_subcommand("compile", "compile one or more circuits");
    add_common_options(compile, cfg, router);
    compile->add_option("--circuit", cfg.circuit_paths, "circuit .qasm file(s)")->required();

    auto* corpus = app.add_subcommand("corpus", "compile every circuit in a directory");
    add_common_options(corpus, cfg, router);
    corpus->add_option("--dir", corpus_dir, "directory of .qasm files")->required();

    auto* sweep = app.add_subcommand("sweep", "sweep the partition weight grid");
    add_common_options(sweep, cfg, router);
    sweep->add_option("--circuit", cfg.circuit_paths, "circuit .qasm file(s)")->required();
    sweep->add_option("--grid", grid_spec, "omega grid as start:stop:step");
    sweep->add_flag("--allow-large-sweep", allow_large_sweep, "lift the 500-point guard");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.router = parse_router(router);
        cfg.validate();
        const tram::DeviceModel dev = tram::load_device(cfg.device_path);

        if (compile->parsed()) {
            std::vector<tram::Circuit> circuits;
            for (const auto& path : cfg.circuit_paths) {
                circuits.push_back(tram::parse_qasm_file(path));
            }
            return finish(cfg, dev, tram::run_circuits(cfg, dev, circuits));
        }
        if (corpus->parsed()) {
            return finish(cfg, dev, tram::run_corpus(cfg, dev, corpus_dir));
        }
        if (sweep->parsed()) {
            tram::WeightGrid grid;
            grid.allow_large = allow_large_sweep;
            if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%lf", &grid.start, &grid.stop,
                            &grid.step) != 3) {
                throw std::invalid_argument("--grid expects start:stop:step");
            }
            std::vector<tram::Circuit> circuits;
            for (const auto& path : cfg.circuit_paths) {
                circuits.push_back(tram::parse_qasm_file(path));
            }
            const auto points = tram::sweep_weights(cfg, dev, circuits, grid);
            std::cout << tram::sweep_to_json(points);
            return kOk;
        }
    } catch (const tram::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}
