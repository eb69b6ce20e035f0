#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tram {

struct CalibrationRecord {
    int qubit = 0;
    double t1_us = 0.0;
    double t2_us = 0.0;
    double readout_error = 0.0;
    double single_qubit_error = 0.0;
};

struct EdgeRecord {
    int q0 = 0;
    int q1 = 0;  ///< unordered pair, stored with q0 < q1
    double two_qubit_error = 0.0;
    double gate_duration_ns = 0.0;
};

/// Coupling graph plus per-qubit and per-edge calibration. Immutable after
/// load; safe to share across concurrent compilations.
class DeviceModel {
public:
    DeviceModel(std::string name, int num_qubits, std::vector<CalibrationRecord> qubits,
                std::vector<EdgeRecord> edges);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] const std::vector<CalibrationRecord>& qubits() const { return qubits_; }
    [[nodiscard]] const CalibrationRecord& qubit(int i) const {
        return qubits_.at(static_cast<size_t>(i));
    }
    [[nodiscard]] const std::vector<EdgeRecord>& edges() const { return edges_; }
    [[nodiscard]] const std::vector<int>& neighbors(int q) const {
        return adj_.at(static_cast<size_t>(q));
    }
    [[nodiscard]] bool connected(int a, int b) const;
    /// Edge record for an unordered pair; throws if the pair is not coupled.
    [[nodiscard]] const EdgeRecord& edge(int a, int b) const;
    [[nodiscard]] bool is_connected_graph() const;
    [[nodiscard]] double mean_two_qubit_duration_ns() const;

private:
    std::string name_;
    int num_qubits_;
    std::vector<CalibrationRecord> qubits_;
    std::vector<EdgeRecord> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> edge_index_;  // dense (a,b) -> edge id, -1 if absent
};

/// Loads and validates the calibration JSON schema. Disconnected coupling
/// graphs are accepted with a warning; T2 > 2*T1 is clamped with a warning.
[[nodiscard]] DeviceModel load_device(const std::string& path);
[[nodiscard]] DeviceModel device_from_json_text(const std::string& text);

/// Min-max normalized T2 scores in (0, 1+eps]: (T2 - min)/(max - min) + eps.
/// Requires at least two distinct T2 values.
[[nodiscard]] std::vector<double> normalize_t2(const DeviceModel& dev, double epsilon = 1e-8);

/// Additive routing weight of an edge: -ln(1 - two_qubit_error).
[[nodiscard]] double edge_weight(const EdgeRecord& e);

/// Cost of routing a SWAP across an edge: three native two-qubit gates.
[[nodiscard]] double swap_weight(const EdgeRecord& e);

inline constexpr double kUnreachable = 1e12;

/// All-pairs weighted shortest-path distances over edge_weight, one Dijkstra
/// run per source. Unreachable pairs hold kUnreachable.
[[nodiscard]] std::vector<std::vector<double>> err_distance(const DeviceModel& dev);

/// Dephasing-induced failure probability over a dwell time t (same unit as
/// T2, microseconds): 1 - exp(-t / T2).
[[nodiscard]] double dwell_penalty(const CalibrationRecord& q, double t_us);

/// Precomputed noise-aware routing costs: D(i,j) = D_err(i,j) + eta*(P_i + P_j).
class RoutingCostTable {
public:
    RoutingCostTable(const DeviceModel& dev, double eta, double dwell_time_us);

    [[nodiscard]] double cost(int i, int j) const {
        const double d = d_err_[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (d >= kUnreachable) return kUnreachable;
        return d + eta_ * (p_[static_cast<size_t>(i)] + p_[static_cast<size_t>(j)]);
    }
    [[nodiscard]] double err(int i, int j) const {
        return d_err_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    [[nodiscard]] double dwell(int i) const { return p_[static_cast<size_t>(i)]; }
    [[nodiscard]] double eta() const { return eta_; }
    [[nodiscard]] double dwell_time_us() const { return dwell_time_us_; }
    [[nodiscard]] int size() const { return static_cast<int>(p_.size()); }

private:
    double eta_;
    double dwell_time_us_;
    std::vector<std::vector<double>> d_err_;
    std::vector<double> p_;
};

/// Default dwell-time instantiation: one routing layer, i.e. the device's
/// mean two-qubit gate duration in microseconds. Larger values make the
/// per-qubit decoherence penalties dominate the per-hop gate-error weights,
/// which turns the routing heuristic's distance signal into a location
/// preference; keep overrides within a few layers. Overridable via
/// configuration.
[[nodiscard]] double default_dwell_time_us(const DeviceModel& dev);

/// Hop distances and hop diameter over a vertex subset's induced subgraph
/// (used by the router's progress guard).
[[nodiscard]] int induced_hop_diameter(const DeviceModel& dev, const std::vector<int>& subset);

}  // namespace tram
