#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tram/circuit.hpp"
#include "tram/device.hpp"
#include "tram/partition.hpp"
#include "tram/router.hpp"
#include "tram/sim.hpp"

namespace tram {

enum class RouterMode { Tram, Baseline, Both };

/// A routed artifact failed an output invariant (e.g. hardware conformance
/// on re-validation). Distinct from configuration errors for exit codes.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] std::string_view router_mode_name(RouterMode m);

struct PipelineConfig {
    std::string device_path;
    std::vector<std::string> circuit_paths;
    double omega1 = 0.5;
    double omega2 = 0.5;
    double phi = 1.0;
    double eta = 0.5;
    double mu = 0.5;
    double delta = 1e-3;
    double epsilon = 1e-8;
    int refine_budget = -1;      ///< < 0 selects 10 * width^2
    RouterMode router = RouterMode::Tram;
    bool simulate = false;
    long seed = 0;               ///< reserved; the pipeline is deterministic
    std::string out_dir;
    double dwell_time_us = -1.0;  ///< < 0 selects depth * mean gate duration
    bool decompose_swaps = true;
    int decay_reset_interval = 0;  ///< reset decay every N executed gates; 0 = off
    int density_cap = kDefaultDensityQubitCap;
    int simulate_max_width = 5;  ///< circuits wider than this report null fidelity

    void validate() const;
};

/// One routed result: structural metrics plus optional fidelity.
struct RouterResult {
    std::string router;  ///< "tram" | "baseline"
    int gates_after = 0;
    int two_qubit_after = 0;
    int depth_after = 0;
    int swaps = 0;
    double global_cost = 0.0;
    std::vector<int> initial_layout;
    std::vector<int> final_layout;
    std::optional<double> fidelity;
    int guard_trips = 0;
    Circuit routed{1};
};

struct RunRecord {
    std::string circuit;
    int width = 0;
    int gates_before = 0;
    int two_qubit_before = 0;
    int depth_before = 0;
    std::vector<int> partition_members;
    std::vector<RouterResult> results;  ///< one per routed mode
    std::string error;                  ///< nonempty if this circuit failed

    [[nodiscard]] const RouterResult* result_for(const std::string& router) const;
};

struct CorpusAggregates {
    int circuits = 0;
    int failures = 0;
    /// Present only when both routers ran: mean over circuits of
    /// (baseline - tram)/baseline * 100 on two-qubit gates and depth.
    std::optional<double> mean_gate_reduction_pct;
    std::optional<double> mean_depth_reduction_pct;
    std::optional<double> mean_fidelity_delta;  ///< mean(tram - baseline) where both exist
};

struct RunReport {
    std::string device;
    std::vector<RunRecord> rows;  ///< sorted by circuit name
    CorpusAggregates aggregates;
};

/// Runs partition -> initial mapping -> routing for one circuit. With
/// RouterMode::Both, both routers share the partition; the baseline uses
/// the degenerate settings phi = 0, eta = 0, delta = 0.
[[nodiscard]] RunRecord compile_one(const PipelineConfig& cfg, const DeviceModel& dev,
                                    const Circuit& circuit);

/// Compiles every parsable .qasm under the directory (sorted by name).
/// Per-circuit failures are recorded and the run continues.
[[nodiscard]] RunReport run_corpus(const PipelineConfig& cfg, const DeviceModel& dev,
                                   const std::string& corpus_dir);

[[nodiscard]] RunReport run_circuits(const PipelineConfig& cfg, const DeviceModel& dev,
                                     const std::vector<Circuit>& circuits);

struct SweepPoint {
    double omega1 = 0.0;
    double omega2 = 0.0;
    std::vector<int> partition_members;
    CorpusAggregates aggregates;
};

struct WeightGrid {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.25;
    bool allow_large = false;

    [[nodiscard]] std::vector<double> values() const;
};

/// One pipeline run per (omega1, omega2) grid point; partitions are
/// reported for stability analysis. Guarded at 500 points unless
/// allow_large is set.
[[nodiscard]] std::vector<SweepPoint> sweep_weights(const PipelineConfig& cfg,
                                                    const DeviceModel& dev,
                                                    const std::vector<Circuit>& circuits,
                                                    const WeightGrid& grid);

/// Deterministic JSON renderings (keys sorted, no timestamps), so repeated
/// runs are byte-identical.
[[nodiscard]] std::string report_to_json(const RunReport& report);
[[nodiscard]] std::string report_to_table(const RunReport& report);
[[nodiscard]] std::string sweep_to_json(const std::vector<SweepPoint>& points);
[[nodiscard]] std::string partition_report_json(const Partition& p, double omega1,
                                                double omega2);
[[nodiscard]] std::string mapping_report_json(const std::vector<int>& layout,
                                              double global_cost, double phi, double eta);
[[nodiscard]] std::string metrics_json(const RouterResult& r);
[[nodiscard]] std::string fidelity_report_json(const std::string& circuit,
                                               const std::string& router, double fidelity,
                                               int ideal_depth);

/// Writes routed circuits, metrics and reports under cfg.out_dir.
void write_outputs(const PipelineConfig& cfg, const DeviceModel& dev, const RunReport& report);

}  // namespace tram
