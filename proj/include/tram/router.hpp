#pragma once

#include <vector>

#include "tram/circuit.hpp"
#include "tram/dag.hpp"
#include "tram/device.hpp"
#include "tram/placement.hpp"

namespace tram {

struct RouteParams {
    double mu = 0.5;        ///< look-ahead weight in [0,1]
    double delta = 1e-3;    ///< decay increment per SWAP and logical operand
    bool decompose_swaps = true;
    int decay_reset_interval = 0;  ///< reset decay every N executed gates; 0 = never
    /// Consecutive SWAPs allowed without executing a gate before the guard
    /// force-routes; <= 0 selects 3 * hop-diameter of the mapped region.
    int progress_guard_override = 0;
};

struct RoutedCircuit {
    Circuit physical;               ///< routed gates at physical indices
    std::vector<int> initial_layout;  ///< logical -> physical before routing
    std::vector<int> final_layout;    ///< logical -> physical after routing
    int swaps_inserted = 0;
    int guard_trips = 0;  ///< times the progress guard had to force-route
    std::vector<double> final_decay;  ///< per logical qubit, after routing
    std::vector<int> swap_touches;    ///< inserted SWAPs involving each logical qubit

    [[nodiscard]] int two_qubit_gates() const { return physical.two_qubit_count(); }
    [[nodiscard]] int circuit_depth() const { return depth(physical); }
};

/// Router working state, exposed for tests: the mutable mapping, the
/// two-qubit front layer, its look-ahead set, and per-logical-qubit decay
/// factors (decay[q] = 1 + delta * SWAPs touching q so far).
struct RouterState {
    Mapping mapping;
    std::vector<int> front;      ///< two-qubit gate ids with no unexecuted predecessors
    std::vector<int> lookahead;  ///< two-qubit immediate successors of the front
    std::vector<double> decay;   ///< per logical qubit, >= 1
};

/// Gates whose predecessors are all executed, after transparently executing
/// every ready non-two-qubit gate (those never block routing). Returns the
/// two-qubit front; `executed` is updated with the transparent gates.
[[nodiscard]] std::vector<int> two_qubit_front(const CircuitDag& dag,
                                               std::vector<char>& executed);

/// Two-qubit immediate DAG successors of the given front gates.
[[nodiscard]] std::vector<int> lookahead_set(const CircuitDag& dag,
                                             const std::vector<int>& front,
                                             const std::vector<char>& executed);

/// Coupling edges incident to any physical qubit hosting an operand of a
/// front gate, deduplicated and sorted.
[[nodiscard]] std::vector<std::pair<int, int>> candidate_swaps(const RouterState& state,
                                                               const CircuitDag& dag,
                                                               const DeviceModel& dev);

/// Decay-weighted heuristic of one candidate SWAP, evaluated on the
/// tentative post-swap mapping:
///   max(decay(qi), decay(qj)) * [ mean_front D + mu * mean_lookahead D ].
/// The look-ahead term is zero when the look-ahead set is empty.
[[nodiscard]] double heuristic_cost(const std::pair<int, int>& swap_edge, RouterState& state,
                                    const CircuitDag& dag, const RoutingCostTable& costs,
                                    double mu);

/// Routes the circuit: alternately executes every executable front gate and
/// inserts the heuristic-minimizing SWAP (ties -> smallest physical edge).
/// Measures are re-emitted at the end per the final layout; barriers pass
/// through remapped. Deterministic for fixed inputs.
[[nodiscard]] RoutedCircuit route(const CircuitDag& dag, const Mapping& m0,
                                  const DeviceModel& dev, const RoutingCostTable& costs,
                                  const RouteParams& params);

/// Reference mode: the identical loop with decay frozen at 1. The cost
/// table should be built with eta = 0 so the heuristic reduces to pure
/// gate-error distance with look-ahead.
[[nodiscard]] RoutedCircuit route_baseline(const CircuitDag& dag, const Mapping& m0,
                                           const DeviceModel& dev,
                                           const RoutingCostTable& err_only_costs,
                                           RouteParams params);

/// Checks that every two-qubit gate acts on a coupling edge.
[[nodiscard]] bool hardware_conformant(const Circuit& physical, const DeviceModel& dev);

}  // namespace tram
