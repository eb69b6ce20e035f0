#pragma once

#include <vector>

#include "tram/circuit.hpp"
#include "tram/dag.hpp"
#include "tram/device.hpp"
#include "tram/partition.hpp"

namespace tram {

/// Symmetric matrix of time-weighted logical-pair interaction intensities.
class Heatmap {
public:
    Heatmap(int num_logical, double phi);

    [[nodiscard]] int num_logical() const { return n_; }
    [[nodiscard]] double phi() const { return phi_; }
    [[nodiscard]] double at(int i, int j) const {
        return hm_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)];
    }
    void accumulate(int i, int j, double w);
    /// Total interaction weight of one logical qubit (row sum).
    [[nodiscard]] double row_sum(int i) const;
    /// Logical pairs (i < j) with nonzero weight.
    [[nodiscard]] std::vector<std::pair<int, int>> active_pairs() const;

private:
    int n_;
    double phi_;
    std::vector<double> hm_;
};

/// Time weight of the k-th gate in reverse execution order (1-indexed):
/// exp(phi * (1 - k/total)). k = 1 is the circuit's final two-qubit gate.
[[nodiscard]] double time_weight(int k, int total, double phi);

/// Accumulates time weights over the reverse-ordered two-qubit gates.
[[nodiscard]] Heatmap build_heatmap(const CircuitDag& dag, double phi);

/// Injective logical -> physical assignment within a partition.
class Mapping {
public:
    Mapping(int num_logical, int num_physical);

    void assign(int logical, int physical);
    void unassign(int logical);
    [[nodiscard]] int physical(int logical) const {
        return log_to_phys_[static_cast<size_t>(logical)];
    }
    [[nodiscard]] int logical_at(int physical) const {
        return phys_to_log_[static_cast<size_t>(physical)];
    }
    [[nodiscard]] bool is_assigned(int logical) const { return physical(logical) >= 0; }
    [[nodiscard]] bool is_complete() const;
    [[nodiscard]] int num_logical() const { return static_cast<int>(log_to_phys_.size()); }
    [[nodiscard]] int num_physical() const { return static_cast<int>(phys_to_log_.size()); }
    /// logical -> physical image as a plain array.
    [[nodiscard]] const std::vector<int>& layout() const { return log_to_phys_; }

    /// Exchanges the logical occupants of two physical qubits (either may
    /// be empty). The relabeling a routed SWAP performs.
    void swap_physical(int pa, int pb);

    friend bool operator==(const Mapping& a, const Mapping& b) {
        return a.log_to_phys_ == b.log_to_phys_;
    }

private:
    std::vector<int> log_to_phys_;
    std::vector<int> phys_to_log_;
};

/// Weighted placement cost: sum over interacting logical pairs of
/// hm[i][j] * D(pi(i), pi(j)).
[[nodiscard]] double global_cost(const Heatmap& hm, const RoutingCostTable& costs,
                                 const Mapping& m);

/// Heatmap-guided greedy placement into the partition: hottest logical
/// pairs claim the cheapest available physical pairs; a pair with one
/// placed endpoint extends from it; leftover logical qubits go to the
/// remaining partition qubits in descending T2 order.
[[nodiscard]] Mapping greedy_assign(const Heatmap& hm, const RoutingCostTable& costs,
                                    const Partition& partition, const DeviceModel& dev);

/// First-improvement hill climbing over pairwise exchanges of physical
/// assignments (including moves onto unused partition qubits). The budget
/// caps the number of accepted exchanges; the result never costs more than
/// the start.
[[nodiscard]] Mapping refine_mapping(Mapping m, const Heatmap& hm, const RoutingCostTable& costs,
                                     const Partition& partition, int budget);

/// Full initial-placement pipeline: reverse gate ordering, heatmap, greedy
/// assignment and refinement. A negative budget selects the default
/// 10 * num_logical^2.
[[nodiscard]] Mapping initial_mapping(const Circuit& c, const CircuitDag& dag,
                                      const DeviceModel& dev, const Partition& partition,
                                      const RoutingCostTable& costs, double phi,
                                      int refine_budget = -1);

}  // namespace tram
