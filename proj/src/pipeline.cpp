#include "tram/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "tram/dag.hpp"
#include "tram/log.hpp"
#include "tram/placement.hpp"
#include "tram/qasm.hpp"

namespace tram {

using nlohmann::json;

std::string_view router_mode_name(RouterMode m) {
    switch (m) {
        case RouterMode::Tram: return "tram";
        case RouterMode::Baseline: return "baseline";
        case RouterMode::Both: return "both";
    }
    return "?";
}

void PipelineConfig::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(omega1) || !in_unit(omega2)) {
        throw std::invalid_argument("omega1/omega2 must lie in [0,1]");
    }
    if (!in_unit(mu)) throw std::invalid_argument("mu must lie in [0,1]");
    if (phi < 0) throw std::invalid_argument("phi must be nonnegative");
    if (eta < 0) throw std::invalid_argument("eta must be nonnegative");
    if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (density_cap < 1) throw std::invalid_argument("density cap must be positive");
}

const RouterResult* RunRecord::result_for(const std::string& router) const {
    for (const auto& r : results) {
        if (r.router == router) return &r;
    }
    return nullptr;
}

namespace {

struct ModeSettings {
    std::string name;
    double phi;
    double eta;
    double delta;
};

std::vector<ModeSettings> modes_for(const PipelineConfig& cfg) {
    const ModeSettings tram{"tram", cfg.phi, cfg.eta, cfg.delta};
    // The reference mode shares the partition and heatmap and runs the same
    // pipeline with eta = 0 (pure gate-error distances) and no decay.
    const ModeSettings baseline{"baseline", cfg.phi, 0.0, 0.0};
    switch (cfg.router) {
        case RouterMode::Tram: return {tram};
        case RouterMode::Baseline: return {baseline};
        case RouterMode::Both: return {baseline, tram};
    }
    return {};
}

json layout_json(const std::vector<int>& layout) { return json(layout); }

}  // namespace

RunRecord compile_one(const PipelineConfig& cfg, const DeviceModel& dev,
                      const Circuit& circuit) {
    cfg.validate();
    RunRecord record;
    record.circuit = circuit.name();
    record.width = circuit.num_qubits();
    record.gates_before = circuit.computational_count();
    record.two_qubit_before = circuit.two_qubit_count();
    record.depth_before = depth(circuit);
    if (circuit.num_qubits() > dev.num_qubits()) {
        throw std::invalid_argument("circuit '" + circuit.name() + "' needs " +
                                    std::to_string(circuit.num_qubits()) +
                                    " qubits but device '" + dev.name() + "' has " +
                                    std::to_string(dev.num_qubits()));
    }

    const Partition partition = select_partition(dev, {cfg.omega1, cfg.omega2},
                                                 circuit.num_qubits(), cfg.epsilon);
    record.partition_members = partition.members;

    const CircuitDag dag(circuit);
    const double dwell_us =
        cfg.dwell_time_us >= 0 ? cfg.dwell_time_us : default_dwell_time_us(dev);

    for (const ModeSettings& mode : modes_for(cfg)) {
        const RoutingCostTable costs(dev, mode.eta, dwell_us);
        const Heatmap hm = build_heatmap(dag, mode.phi);
        Mapping m0 = greedy_assign(hm, costs, partition, dev);
        const int budget = cfg.refine_budget >= 0
                               ? cfg.refine_budget
                               : 10 * circuit.num_qubits() * circuit.num_qubits();
        m0 = refine_mapping(std::move(m0), hm, costs, partition, budget);

        RouteParams params;
        params.mu = cfg.mu;
        params.delta = mode.delta;
        params.decompose_swaps = cfg.decompose_swaps;
        params.decay_reset_interval = cfg.decay_reset_interval;
        RoutedCircuit routed = route(dag, m0, dev, costs, params);
        if (!hardware_conformant(routed.physical, dev)) {
            throw InvariantViolation("routed circuit violates hardware conformance");
        }

        RouterResult res;
        res.router = mode.name;
        res.gates_after = routed.physical.computational_count();
        res.two_qubit_after = routed.two_qubit_gates();
        res.depth_after = routed.circuit_depth();
        res.swaps = routed.swaps_inserted;
        res.global_cost = global_cost(hm, costs, m0);
        res.initial_layout = routed.initial_layout;
        res.final_layout = routed.final_layout;
        res.guard_trips = routed.guard_trips;
        if (cfg.simulate && circuit.num_qubits() <= cfg.simulate_max_width) {
            try {
                res.fidelity = noisy_vs_ideal_fidelity(routed.physical, dev, NoiseSpec{},
                                                       cfg.density_cap);
            } catch (const std::exception& e) {
                log_info("fidelity unavailable for '" + circuit.name() + "' (" + mode.name +
                         "): " + e.what());
            }
        }
        res.routed = std::move(routed.physical);
        record.results.push_back(std::move(res));
    }
    return record;
}

namespace {

CorpusAggregates aggregate(const std::vector<RunRecord>& rows) {
    CorpusAggregates agg;
    agg.circuits = static_cast<int>(rows.size());
    double gate_sum = 0.0;
    double depth_sum = 0.0;
    int reduction_count = 0;
    double fidelity_sum = 0.0;
    int fidelity_count = 0;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            ++agg.failures;
            continue;
        }
        const RouterResult* tram = row.result_for("tram");
        const RouterResult* base = row.result_for("baseline");
        if (tram == nullptr || base == nullptr) continue;
        if (base->two_qubit_after > 0 && base->depth_after > 0) {
            gate_sum += 100.0 *
                        static_cast<double>(base->two_qubit_after - tram->two_qubit_after) /
                        static_cast<double>(base->two_qubit_after);
            depth_sum += 100.0 * static_cast<double>(base->depth_after - tram->depth_after) /
                         static_cast<double>(base->depth_after);
            ++reduction_count;
        }
        if (tram->fidelity && base->fidelity) {
            fidelity_sum += *tram->fidelity - *base->fidelity;
            ++fidelity_count;
        }
    }
    if (reduction_count > 0) {
        agg.mean_gate_reduction_pct = gate_sum / reduction_count;
        agg.mean_depth_reduction_pct = depth_sum / reduction_count;
    }
    if (fidelity_count > 0) agg.mean_fidelity_delta = fidelity_sum / fidelity_count;
    return agg;
}

}  // namespace

RunReport run_circuits(const PipelineConfig& cfg, const DeviceModel& dev,
                       const std::vector<Circuit>& circuits) {
    cfg.validate();
    RunReport report;
    report.device = dev.name();
    report.rows.resize(circuits.size());

    // Compilations are independent and deterministic, so they may run
    // concurrently; each worker writes its own slot.
    const unsigned workers = std::max(1u, std::min<unsigned>(
        std::thread::hardware_concurrency(), static_cast<unsigned>(circuits.size())));
    std::atomic<size_t> next{0};
    std::exception_ptr invariant_failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= circuits.size()) break;
            try {
                report.rows[i] = compile_one(cfg, dev, circuits[i]);
            } catch (const InvariantViolation&) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!invariant_failure) invariant_failure = std::current_exception();
            } catch (const std::exception& e) {
                RunRecord failed;
                failed.circuit = circuits[i].name();
                failed.width = circuits[i].num_qubits();
                failed.error = e.what();
                report.rows[i] = std::move(failed);
            }
        }
    };
    if (workers <= 1 || circuits.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (invariant_failure) std::rethrow_exception(invariant_failure);

    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const RunRecord& a, const RunRecord& b) { return a.circuit < b.circuit; });
    report.aggregates = aggregate(report.rows);
    return report;
}

RunReport run_corpus(const PipelineConfig& cfg, const DeviceModel& dev,
                     const std::string& corpus_dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".qasm") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        throw std::invalid_argument("no .qasm circuits found in '" + corpus_dir + "'");
    }
    std::vector<Circuit> circuits;
    std::vector<RunRecord> parse_failures;
    for (const auto& path : paths) {
        try {
            circuits.push_back(parse_qasm_file(path));
        } catch (const std::exception& e) {
            RunRecord failed;
            failed.circuit = fs::path(path).stem().string();
            failed.error = e.what();
            parse_failures.push_back(std::move(failed));
        }
    }
    RunReport report = run_circuits(cfg, dev, circuits);
    for (auto& row : parse_failures) report.rows.push_back(std::move(row));
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const RunRecord& a, const RunRecord& b) { return a.circuit < b.circuit; });
    report.aggregates = aggregate(report.rows);
    return report;
}

std::vector<double> WeightGrid::values() const {
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    if (stop < start) throw std::invalid_argument("grid stop must be >= start");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = start + step * i;
        if (v > stop + 1e-12) break;
        out.push_back(std::min(v, stop));
    }
    return out;
}

std::vector<SweepPoint> sweep_weights(const PipelineConfig& cfg, const DeviceModel& dev,
                                      const std::vector<Circuit>& circuits,
                                      const WeightGrid& grid) {
    if (circuits.empty()) throw std::invalid_argument("sweep needs at least one circuit");
    const auto values = grid.values();
    const size_t points = values.size() * values.size();
    if (points > 500 && !grid.allow_large) {
        throw std::invalid_argument("sweep grid has " + std::to_string(points) +
                                    " points; pass --allow-large-sweep to proceed");
    }
    int max_width = 0;
    for (const auto& c : circuits) max_width = std::max(max_width, c.num_qubits());

    std::vector<SweepPoint> out;
    for (const double w1 : values) {
        for (const double w2 : values) {
            PipelineConfig point_cfg = cfg;
            point_cfg.omega1 = w1;
            point_cfg.omega2 = w2;
            SweepPoint point;
            point.omega1 = w1;
            point.omega2 = w2;
            point.partition_members =
                select_partition(dev, {w1, w2}, max_width, cfg.epsilon).members;
            point.aggregates = run_circuits(point_cfg, dev, circuits).aggregates;
            out.push_back(std::move(point));
        }
    }
    return out;
}

namespace {

json aggregates_json(const CorpusAggregates& agg) {
    json j;
    j["circuits"] = agg.circuits;
    j["failures"] = agg.failures;
    j["mean_gate_reduction_pct"] =
        agg.mean_gate_reduction_pct ? json(*agg.mean_gate_reduction_pct) : json(nullptr);
    j["mean_depth_reduction_pct"] =
        agg.mean_depth_reduction_pct ? json(*agg.mean_depth_reduction_pct) : json(nullptr);
    j["mean_fidelity_delta"] =
        agg.mean_fidelity_delta ? json(*agg.mean_fidelity_delta) : json(nullptr);
    return j;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
    json j;
    j["device"] = report.device;
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["circuit"] = row.circuit;
        r["width"] = row.width;
        r["gates_before"] = row.gates_before;
        r["two_qubit_before"] = row.two_qubit_before;
        r["depth_before"] = row.depth_before;
        r["partition"] = layout_json(row.partition_members);
        if (!row.error.empty()) r["error"] = row.error;
        json results = json::array();
        for (const auto& res : row.results) {
            json x;
            x["router"] = res.router;
            x["gates_after"] = res.gates_after;
            x["two_qubit_after"] = res.two_qubit_after;
            x["depth_after"] = res.depth_after;
            x["swaps"] = res.swaps;
            x["global_cost"] = res.global_cost;
            x["initial_layout"] = layout_json(res.initial_layout);
            x["final_layout"] = layout_json(res.final_layout);
            x["fidelity"] = res.fidelity ? json(*res.fidelity) : json(nullptr);
            x["guard_trips"] = res.guard_trips;
            results.push_back(std::move(x));
        }
        r["results"] = std::move(results);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["aggregates"] = aggregates_json(report.aggregates);
    return j.dump(2) + "\n";
}

std::string report_to_table(const RunReport& report) {
    std::ostringstream os;
    auto cell = [](const std::string& s, size_t w) {
        std::string out = s;
        if (out.size() < w) out.resize(w, ' ');
        return out;
    };
    auto num = [](std::optional<double> v) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *v);
        return std::string(buf);
    };
    os << cell("Benchmark", 24) << cell("Device", 12) << cell("B.Gates", 9)
       << cell("B.Depth", 9) << cell("B.Fid", 8) << cell("T.Gates", 9) << cell("T.Depth", 9)
       << cell("T.Fid", 8) << cell("dGates", 8) << cell("dDepth", 8) << cell("dFid", 8)
       << '\n';
    for (const auto& row : report.rows) {
        if (!row.error.empty()) {
            os << cell(row.circuit, 24) << cell(report.device, 12) << "error: " << row.error
               << '\n';
            continue;
        }
        const RouterResult* base = row.result_for("baseline");
        const RouterResult* tram = row.result_for("tram");
        auto metric = [&](const RouterResult* r, auto getter) {
            return r ? std::to_string(getter(*r)) : std::string("-");
        };
        auto fid = [&](const RouterResult* r) {
            return r && r->fidelity ? num(*r->fidelity) : std::string("-");
        };
        os << cell(row.circuit, 24) << cell(report.device, 12);
        os << cell(metric(base, [](const auto& r) { return r.two_qubit_after; }), 9)
           << cell(metric(base, [](const auto& r) { return r.depth_after; }), 9)
           << cell(fid(base), 8);
        os << cell(metric(tram, [](const auto& r) { return r.two_qubit_after; }), 9)
           << cell(metric(tram, [](const auto& r) { return r.depth_after; }), 9)
           << cell(fid(tram), 8);
        if (base != nullptr && tram != nullptr && base->two_qubit_after > 0 &&
            base->depth_after > 0) {
            os << cell(num(100.0 * (base->two_qubit_after - tram->two_qubit_after) /
                           static_cast<double>(base->two_qubit_after)),
                       8)
               << cell(num(100.0 * (base->depth_after - tram->depth_after) /
                           static_cast<double>(base->depth_after)),
                       8);
            if (base->fidelity && tram->fidelity) {
                os << cell(num(*tram->fidelity - *base->fidelity), 8);
            } else {
                os << cell("-", 8);
            }
        } else {
            os << cell("-", 8) << cell("-", 8) << cell("-", 8);
        }
        os << '\n';
    }
    const auto& agg = report.aggregates;
    os << "circuits: " << agg.circuits << "  failures: " << agg.failures
       << "  mean gate reduction %: " << num(agg.mean_gate_reduction_pct)
       << "  mean depth reduction %: " << num(agg.mean_depth_reduction_pct)
       << "  mean fidelity delta: " << num(agg.mean_fidelity_delta) << '\n';
    return os.str();
}

std::string sweep_to_json(const std::vector<SweepPoint>& points) {
    json rows = json::array();
    for (const auto& p : points) {
        json j;
        j["omega1"] = p.omega1;
        j["omega2"] = p.omega2;
        j["partition"] = layout_json(p.partition_members);
        j["aggregates"] = aggregates_json(p.aggregates);
        rows.push_back(std::move(j));
    }
    return rows.dump(2) + "\n";
}

std::string partition_report_json(const Partition& p, double omega1, double omega2) {
    json j;
    j["members"] = layout_json(p.members);
    j["reward_trail"] = json(p.reward_trail);
    j["omega1"] = omega1;
    j["omega2"] = omega2;
    j["mean_t2_us"] = p.mean_t2_us;
    return j.dump(2) + "\n";
}

std::string mapping_report_json(const std::vector<int>& layout, double global_cost, double phi,
                                double eta) {
    json j;
    j["layout"] = layout_json(layout);
    j["global_cost"] = global_cost;
    j["phi"] = phi;
    j["eta"] = eta;
    return j.dump(2) + "\n";
}

std::string metrics_json(const RouterResult& r) {
    json j;
    j["two_qubit_gates"] = r.two_qubit_after;
    j["depth"] = r.depth_after;
    j["swaps"] = r.swaps;
    j["final_layout"] = layout_json(r.final_layout);
    return j.dump(2) + "\n";
}

std::string fidelity_report_json(const std::string& circuit, const std::string& router,
                                 double fidelity, int ideal_depth) {
    json j;
    j["circuit"] = circuit;
    j["router"] = router;
    j["fidelity"] = fidelity;
    j["ideal_depth"] = ideal_depth;
    return j.dump(2) + "\n";
}

void write_outputs(const PipelineConfig& cfg, const DeviceModel& dev, const RunReport& report) {
    namespace fs = std::filesystem;
    if (cfg.out_dir.empty()) return;
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    auto write = [](const fs::path& path, const std::string& text) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
    };
    write(dir / "report.json", report_to_json(report));
    write(dir / "report.txt", report_to_table(report));
    for (const auto& row : report.rows) {
        if (!row.error.empty()) continue;
        Partition p;
        p.members = row.partition_members;
        double t2 = 0.0;
        for (int q : p.members) t2 += dev.qubit(q).t2_us;
        p.mean_t2_us = p.members.empty() ? 0.0 : t2 / static_cast<double>(p.members.size());
        write(dir / (row.circuit + ".partition.json"),
              partition_report_json(p, cfg.omega1, cfg.omega2));
        for (const auto& res : row.results) {
            if (!hardware_conformant(res.routed, dev)) {
                throw InvariantViolation("output re-validation failed for '" + row.circuit + "'");
            }
            const std::string stem = row.circuit + "." + res.router;
            write(dir / (stem + ".qasm"), to_qasm(res.routed));
            write(dir / (stem + ".metrics.json"), metrics_json(res));
            write(dir / (stem + ".mapping.json"),
                  mapping_report_json(res.initial_layout, res.global_cost, cfg.phi,
                                      res.router == "tram" ? cfg.eta : 0.0));
            if (res.fidelity) {
                write(dir / (stem + ".fidelity.json"),
                      fidelity_report_json(row.circuit, res.router, *res.fidelity,
                                           row.depth_before));
            }
        }
    }
}

}  // namespace tram
