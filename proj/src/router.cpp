#include "tram/router.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "tram/log.hpp"

namespace tram {
namespace {

/// Min-weight path between two physical qubits over edge_weight; used by
/// the progress guard's forced routing.
std::vector<int> cheapest_path(const DeviceModel& dev, int src, int dst) {
    const int n = dev.num_qubits();
    std::vector<double> dist(static_cast<size_t>(n), kUnreachable);
    std::vector<int> prev(static_cast<size_t>(n), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<size_t>(src)] = 0.0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[static_cast<size_t>(u)]) continue;
        if (u == dst) break;
        for (int v : dev.neighbors(u)) {
            const double cand = du + edge_weight(dev.edge(u, v));
            if (cand < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = cand;
                prev[static_cast<size_t>(v)] = u;
                pq.emplace(cand, v);
            }
        }
    }
    if (dist[static_cast<size_t>(dst)] >= kUnreachable) {
        throw std::runtime_error("unroutable: mapped region is disconnected");
    }
    std::vector<int> path;
    for (int v = dst; v != -1; v = prev[static_cast<size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

int image_hop_diameter(const DeviceModel& dev, const Mapping& m) {
    std::vector<int> image;
    for (int q = 0; q < m.num_logical(); ++q) image.push_back(m.physical(q));
    int diameter = 0;
    for (int src : image) {
        std::vector<int> hops(static_cast<size_t>(dev.num_qubits()), -1);
        std::queue<int> bfs;
        hops[static_cast<size_t>(src)] = 0;
        bfs.push(src);
        while (!bfs.empty()) {
            const int u = bfs.front();
            bfs.pop();
            for (int v : dev.neighbors(u)) {
                if (hops[static_cast<size_t>(v)] < 0) {
                    hops[static_cast<size_t>(v)] = hops[static_cast<size_t>(u)] + 1;
                    bfs.push(v);
                }
            }
        }
        for (int other : image) {
            const int h = hops[static_cast<size_t>(other)];
            if (h < 0) throw std::runtime_error("unroutable: mapped region is disconnected");
            diameter = std::max(diameter, h);
        }
    }
    return diameter;
}

}  // namespace

std::vector<int> two_qubit_front(const CircuitDag& dag, std::vector<char>& executed) {
    if (static_cast<int>(executed.size()) != dag.size()) {
        throw std::invalid_argument("executed-flag vector size mismatch");
    }
    std::vector<int> indeg(static_cast<size_t>(dag.size()), 0);
    for (int id = 0; id < dag.size(); ++id) {
        if (executed[static_cast<size_t>(id)]) continue;
        int deg = 0;
        for (int p : dag.predecessors(id)) {
            if (!executed[static_cast<size_t>(p)]) ++deg;
        }
        indeg[static_cast<size_t>(id)] = deg;
    }
    std::set<int> ready;
    for (int id = 0; id < dag.size(); ++id) {
        if (!executed[static_cast<size_t>(id)] && indeg[static_cast<size_t>(id)] == 0) {
            ready.insert(id);
        }
    }
    std::vector<int> front;
    while (!ready.empty()) {
        const int id = *ready.begin();
        ready.erase(ready.begin());
        if (dag.gate(id).is_two_qubit()) {
            front.push_back(id);
            continue;
        }
        // Single-qubit gates and metadata never block; treat as executed.
        executed[static_cast<size_t>(id)] = 1;
        for (int s : dag.successors(id)) {
            if (--indeg[static_cast<size_t>(s)] == 0) ready.insert(s);
        }
    }
    std::sort(front.begin(), front.end());
    return front;
}

std::vector<int> lookahead_set(const CircuitDag& dag, const std::vector<int>& front,
                               const std::vector<char>& executed) {
    std::set<int> out;
    for (int id : front) {
        for (int s : dag.successors(id)) {
            if (!executed[static_cast<size_t>(s)] && dag.gate(s).is_two_qubit()) out.insert(s);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<std::pair<int, int>> candidate_swaps(const RouterState& state, const CircuitDag& dag,
                                                 const DeviceModel& dev) {
    std::set<int> hosts;
    for (int id : state.front) {
        const Gate& g = dag.gate(id);
        hosts.insert(state.mapping.physical(g.qubits[0]));
        hosts.insert(state.mapping.physical(g.qubits[1]));
    }
    std::set<std::pair<int, int>> edges;
    for (int p : hosts) {
        for (int v : dev.neighbors(p)) {
            edges.emplace(std::min(p, v), std::max(p, v));
        }
    }
    return {edges.begin(), edges.end()};
}

double heuristic_cost(const std::pair<int, int>& swap_edge, RouterState& state,
                      const CircuitDag& dag, const RoutingCostTable& costs, double mu) {
    const int la = state.mapping.logical_at(swap_edge.first);
    const int lb = state.mapping.logical_at(swap_edge.second);
    double decay_factor = 1.0;
    if (la >= 0) decay_factor = std::max(decay_factor, state.decay[static_cast<size_t>(la)]);
    if (lb >= 0) decay_factor = std::max(decay_factor, state.decay[static_cast<size_t>(lb)]);

    state.mapping.swap_physical(swap_edge.first, swap_edge.second);
    auto mean_distance = [&](const std::vector<int>& gates) {
        double sum = 0.0;
        for (int id : gates) {
            const Gate& g = dag.gate(id);
            sum += costs.cost(state.mapping.physical(g.qubits[0]),
                              state.mapping.physical(g.qubits[1]));
        }
        return sum / static_cast<double>(gates.size());
    };
    double h = mean_distance(state.front);
    if (!state.lookahead.empty()) h += mu * mean_distance(state.lookahead);
    state.mapping.swap_physical(swap_edge.first, swap_edge.second);  // restore
    return decay_factor * h;
}

RoutedCircuit route(const CircuitDag& dag, const Mapping& m0, const DeviceModel& dev,
                    const RoutingCostTable& costs, const RouteParams& params) {
    const Circuit& circuit = dag.circuit();
    if (!m0.is_complete() || m0.num_logical() != circuit.num_qubits() ||
        m0.num_physical() != dev.num_qubits()) {
        throw std::invalid_argument("initial mapping does not cover the circuit on this device");
    }

    RoutedCircuit result{Circuit(dev.num_qubits(), circuit.name()), m0.layout(), {}, 0, 0,
                         {}, std::vector<int>(static_cast<size_t>(circuit.num_qubits()), 0)};
    RouterState state{m0, {}, {}, std::vector<double>(static_cast<size_t>(circuit.num_qubits()),
                                                      1.0)};

    const int guard_bound = params.progress_guard_override > 0
                                ? params.progress_guard_override
                                : 3 * std::max(1, image_hop_diameter(dev, m0));

    std::vector<int> indeg(static_cast<size_t>(dag.size()), 0);
    for (int id = 0; id < dag.size(); ++id) indeg[static_cast<size_t>(id)] = dag.in_degree(id);
    std::set<int> ready;
    for (int id = 0; id < dag.size(); ++id) {
        if (indeg[static_cast<size_t>(id)] == 0) ready.insert(id);
    }
    std::set<int> front;
    std::vector<Gate> deferred_measures;
    int executed_two_qubit = 0;

    auto promote = [&](int id) {
        for (int s : dag.successors(id)) {
            if (--indeg[static_cast<size_t>(s)] == 0) ready.insert(s);
        }
    };

    auto emit_mapped = [&](const Gate& g) {
        Gate out = g;
        out.index = -1;
        for (int& q : out.qubits) q = state.mapping.physical(q);
        result.physical.add(std::move(out));
    };

    // Drains the ready set: metadata and single-qubit gates execute
    // immediately, two-qubit gates join the front layer.
    auto flush_ready = [&] {
        while (!ready.empty()) {
            const int id = *ready.begin();
            ready.erase(ready.begin());
            const Gate& g = dag.gate(id);
            if (g.is_two_qubit()) {
                front.insert(id);
                continue;
            }
            if (g.kind == GateKind::Measure) {
                deferred_measures.push_back(g);  // pinned to the end, final layout
            } else {
                emit_mapped(g);
            }
            promote(id);
        }
    };

    auto insert_swap = [&](int pa, int pb) {
        if (pa > pb) std::swap(pa, pb);
        const Gate swap_gate{GateKind::Swap, {pa, pb}, {}};
        if (params.decompose_swaps) {
            for (const Gate& g : decompose_swap(swap_gate)) result.physical.add(g);
        } else {
            result.physical.add(swap_gate);
        }
        for (int p : {pa, pb}) {
            const int logical = state.mapping.logical_at(p);
            if (logical >= 0) {
                state.decay[static_cast<size_t>(logical)] += params.delta;
                ++result.swap_touches[static_cast<size_t>(logical)];
            }
        }
        state.mapping.swap_physical(pa, pb);
        ++result.swaps_inserted;
    };

    flush_ready();
    int swaps_since_progress = 0;
    while (!front.empty()) {
        std::vector<int> executable;
        for (int id : front) {
            const Gate& g = dag.gate(id);
            if (dev.connected(state.mapping.physical(g.qubits[0]),
                              state.mapping.physical(g.qubits[1]))) {
                executable.push_back(id);
            }
        }
        if (!executable.empty()) {
            for (int id : executable) {
                emit_mapped(dag.gate(id));
                front.erase(id);
                promote(id);
                ++executed_two_qubit;
                if (params.decay_reset_interval > 0 &&
                    executed_two_qubit % params.decay_reset_interval == 0) {
                    std::fill(state.decay.begin(), state.decay.end(), 1.0);
                }
            }
            flush_ready();
            swaps_since_progress = 0;
            continue;
        }

        state.front.assign(front.begin(), front.end());
        std::vector<char> executed_mask(static_cast<size_t>(dag.size()), 1);
        for (int id = 0; id < dag.size(); ++id) {
            if (indeg[static_cast<size_t>(id)] > 0 || front.count(id) || ready.count(id)) {
                executed_mask[static_cast<size_t>(id)] = 0;
            }
        }
        state.lookahead = lookahead_set(dag, state.front, executed_mask);

        if (swaps_since_progress >= guard_bound) {
            // Progress guard: force-route the front gate with the cheapest
            // current distance along its min-weight path, overriding the
            // heuristic.
            ++result.guard_trips;
            int best_gate = -1;
            double best_d = std::numeric_limits<double>::infinity();
            for (int id : state.front) {
                const Gate& g = dag.gate(id);
                const double d = costs.cost(state.mapping.physical(g.qubits[0]),
                                            state.mapping.physical(g.qubits[1]));
                if (d < best_d) {
                    best_d = d;
                    best_gate = id;
                }
            }
            const Gate& g = dag.gate(best_gate);
            const auto path = cheapest_path(dev, state.mapping.physical(g.qubits[0]),
                                            state.mapping.physical(g.qubits[1]));
            log_debug("progress guard fired; forcing gate " + std::to_string(best_gate) +
                      " along a " + std::to_string(path.size() - 1) + "-hop path");
            for (size_t i = 0; i + 2 < path.size(); ++i) {
                insert_swap(path[i], path[i + 1]);
            }
            swaps_since_progress = 0;
            continue;
        }

        const auto candidates = candidate_swaps(state, dag, dev);
        if (candidates.empty()) {
            throw std::runtime_error("unroutable: no candidate swaps for the blocked front");
        }
        std::pair<int, int> best{-1, -1};
        double best_h = std::numeric_limits<double>::infinity();
        for (const auto& edge : candidates) {
            const double h = heuristic_cost(edge, state, dag, costs, params.mu);
            if (h < best_h) {  // strict: ties keep the smallest edge
                best_h = h;
                best = edge;
            }
        }
        insert_swap(best.first, best.second);
        ++swaps_since_progress;
    }

    for (const Gate& g : deferred_measures) {
        Gate out = g;
        out.index = -1;
        out.qubits[0] = state.mapping.physical(g.qubits[0]);
        result.physical.add(std::move(out));
    }
    result.final_layout = state.mapping.layout();
    result.final_decay = state.decay;
    return result;
}

RoutedCircuit route_baseline(const CircuitDag& dag, const Mapping& m0, const DeviceModel& dev,
                             const RoutingCostTable& err_only_costs, RouteParams params) {
    params.delta = 0.0;  // decay frozen at 1
    return route(dag, m0, dev, err_only_costs, params);
}

bool hardware_conformant(const Circuit& physical, const DeviceModel& dev) {
    for (const Gate& g : physical.gates()) {
        if (g.is_two_qubit() && !dev.connected(g.qubits[0], g.qubits[1])) return false;
    }
    return true;
}

}  // namespace tram
