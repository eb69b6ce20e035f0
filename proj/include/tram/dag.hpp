#pragma once

#include <vector>

#include "tram/circuit.hpp"

namespace tram {

/// Gate-dependency DAG: gate g depends on the most recent earlier gate that
/// shares any qubit with g, so per-qubit gate sequences form directed
/// chains. Node ids are the gates' program-order indices. The source
/// Circuit must outlive the dag.
class CircuitDag {
public:
    explicit CircuitDag(const Circuit& c);

    [[nodiscard]] int size() const { return static_cast<int>(succ_.size()); }
    [[nodiscard]] const Circuit& circuit() const { return *circuit_; }
    [[nodiscard]] const Gate& gate(int id) const { return circuit_->gate(id); }

    [[nodiscard]] const std::vector<int>& successors(int id) const {
        return succ_[static_cast<size_t>(id)];
    }
    [[nodiscard]] const std::vector<int>& predecessors(int id) const {
        return pred_[static_cast<size_t>(id)];
    }
    [[nodiscard]] int in_degree(int id) const {
        return static_cast<int>(pred_[static_cast<size_t>(id)].size());
    }

    /// Kahn's algorithm with ready nodes taken in ascending gate index.
    /// Program order is itself topological, so this returns 0..n-1; kept as
    /// an explicit check that the graph is acyclic.
    [[nodiscard]] std::vector<int> topological_order() const;

private:
    const Circuit* circuit_;
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
};

/// Two-qubit gates in reverse topological order: element 0 (k=1) is the last
/// two-qubit gate in execution order, the final element the first. Ties in
/// topological order are broken by program index, so the result is simply
/// the two-qubit gate ids in descending index order.
[[nodiscard]] std::vector<int> reverse_two_qubit_order(const CircuitDag& dag);

}  // namespace tram
