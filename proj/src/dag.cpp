#include "tram/dag.hpp"

#include <algorithm>
#include <stdexcept>

namespace tram {

CircuitDag::CircuitDag(const Circuit& c) : circuit_(&c) {
    const auto n = static_cast<size_t>(c.size());
    succ_.resize(n);
    pred_.resize(n);
    std::vector<int> last(static_cast<size_t>(c.num_qubits()), -1);
    for (const Gate& g : c.gates()) {
        for (int q : g.qubits) {
            const int p = last[static_cast<size_t>(q)];
            if (p >= 0) {
                // A gate sharing two qubits with the same predecessor gets one edge.
                auto& sp = succ_[static_cast<size_t>(p)];
                if (sp.empty() || sp.back() != g.index) {
                    sp.push_back(g.index);
                    pred_[static_cast<size_t>(g.index)].push_back(p);
                }
            }
            last[static_cast<size_t>(q)] = g.index;
        }
    }
}

std::vector<int> CircuitDag::topological_order() const {
    std::vector<int> indeg(static_cast<size_t>(size()));
    for (int i = 0; i < size(); ++i) indeg[static_cast<size_t>(i)] = in_degree(i);
    std::vector<int> ready;
    for (int i = 0; i < size(); ++i) {
        if (indeg[static_cast<size_t>(i)] == 0) ready.push_back(i);
    }
    std::vector<int> order;
    order.reserve(static_cast<size_t>(size()));
    while (!ready.empty()) {
        // Smallest gate index first keeps the order deterministic.
        const auto it = std::min_element(ready.begin(), ready.end());
        const int id = *it;
        ready.erase(it);
        order.push_back(id);
        for (int s : successors(id)) {
            if (--indeg[static_cast<size_t>(s)] == 0) ready.push_back(s);
        }
    }
    if (static_cast<int>(order.size()) != size()) {
        throw std::logic_error("dependency graph contains a cycle");
    }
    return order;
}

std::vector<int> reverse_two_qubit_order(const CircuitDag& dag) {
    std::vector<int> ids;
    for (int i = dag.size() - 1; i >= 0; --i) {
        if (dag.gate(i).is_two_qubit()) ids.push_back(i);
    }
    return ids;
}

}  // namespace tram
