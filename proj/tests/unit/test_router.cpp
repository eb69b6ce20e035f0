#include <doctest.h>

#include <random>

#include "tram/benchmarks.hpp"
#include "tram/router.hpp"
#include "tram/verify.hpp"

using namespace tram;

namespace {

DeviceModel make_device(int n, const std::vector<std::pair<int, int>>& edges,
                        double two_qubit_error = 0.002) {
    std::vector<CalibrationRecord> qubits;
    for (int i = 0; i < n; ++i) {
        CalibrationRecord rec;
        rec.qubit = i;
        rec.t2_us = 200.0 + 7.0 * i;
        rec.t1_us = rec.t2_us;
        rec.readout_error = 0.01;
        rec.single_qubit_error = 2e-4;
        qubits.push_back(rec);
    }
    std::vector<EdgeRecord> es;
    for (const auto& [a, b] : edges) {
        EdgeRecord e;
        e.q0 = a;
        e.q1 = b;
        e.two_qubit_error = two_qubit_error;
        e.gate_duration_ns = 80.0;
        es.push_back(e);
    }
    return DeviceModel("test", n, std::move(qubits), std::move(es));
}

Mapping identity_mapping(int n_logical, int n_physical) {
    Mapping m(n_logical, n_physical);
    for (int q = 0; q < n_logical; ++q) m.assign(q, q);
    return m;
}

// 2x3 grid, vertices 0 1 2 / 3 4 5 (row-major), corners 0 and 5 are three
// hops apart.
DeviceModel grid_2x3() {
    return make_device(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

}  // namespace

TEST_SUITE_BEGIN("router");

TEST_CASE("two-qubit front layer") {
    Circuit c(3);
    c.cx(0, 1).cx(1, 2);
    const CircuitDag dag(c);
    std::vector<char> executed(static_cast<size_t>(dag.size()), 0);
    CHECK(two_qubit_front(dag, executed) == std::vector<int>{0});

    // all executed -> empty front
    std::fill(executed.begin(), executed.end(), 1);
    CHECK(two_qubit_front(dag, executed).empty());

    // single-qubit gates never block: H(0) then CX(0,1) exposes the CX.
    Circuit mixed(2);
    mixed.h(0).cx(0, 1);
    const CircuitDag mdag(mixed);
    std::vector<char> mexec(static_cast<size_t>(mdag.size()), 0);
    CHECK(two_qubit_front(mdag, mexec) == std::vector<int>{1});
    CHECK(mexec[0] == 1);  // transparently executed

    // Fredkin-style start: the first two-qubit gates with no two-qubit
    // predecessors form the front.
    const Circuit fredkin = bench::fredkin();
    const CircuitDag fdag(fredkin);
    std::vector<char> fexec(static_cast<size_t>(fdag.size()), 0);
    const auto front = two_qubit_front(fdag, fexec);
    CHECK(!front.empty());
    for (int id : front) {
        CHECK(fdag.gate(id).is_two_qubit());
        for (int p : fdag.predecessors(id)) CHECK(fexec[static_cast<size_t>(p)] == 1);
    }
}

TEST_CASE("candidate swaps are the edges incident to blocked operands") {
    // path Q0-Q1-Q2-Q3 with the blocked gate's operands at Q0 and Q3
    const auto dev = make_device(4, {{0, 1}, {1, 2}, {2, 3}});
    Circuit c(4);
    c.cx(0, 3);
    const CircuitDag dag(c);
    RouterState state{identity_mapping(4, 4), {0}, {},
                      std::vector<double>(4, 1.0)};
    const auto cands = candidate_swaps(state, dag, dev);
    CHECK(cands == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});

    // star topology: blocked gate at two leaves -> the two leaf-center edges
    const auto star = make_device(4, {{0, 1}, {0, 2}, {0, 3}});
    Circuit sc(4);
    sc.cx(1, 3);
    const CircuitDag sdag(sc);
    RouterState sstate{identity_mapping(4, 4), {0}, {}, std::vector<double>(4, 1.0)};
    const auto scands = candidate_swaps(sstate, sdag, star);
    CHECK(scands == std::vector<std::pair<int, int>>{{0, 1}, {0, 3}});
}

TEST_CASE("heuristic evaluates the tentative post-swap mapping") {
    // path of 5; front gate CX(0,4); distances are hop counts when the edge
    // weight is exactly 1.
    const double unit_err = 1.0 - std::exp(-1.0);
    const auto dev = make_device(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, unit_err);
    const RoutingCostTable costs(dev, 0.0, 0.0);

    Circuit c(5);
    c.cx(0, 4).cx(1, 2);
    const CircuitDag dag(c);

    RouterState state{identity_mapping(5, 5), {0}, {}, std::vector<double>(5, 1.0)};
    // swapping (0,1) moves q0 to Q1: post-swap distance 3
    CHECK(heuristic_cost({0, 1}, state, dag, costs, 0.0) == doctest::Approx(3.0).epsilon(1e-9));

    // with a lookahead gate at post-swap distance 1 and mu = 0.5: 3 + 0.5*1
    state.lookahead = {1};
    // swapping (0,1) also relocates q1 onto Q0, so CX(1,2) sits at D(Q0,Q2)=2
    CHECK(heuristic_cost({0, 1}, state, dag, costs, 0.5) ==
          doctest::Approx(3.0 + 0.5 * 2.0).epsilon(1e-9));

    // decay scales the whole bracket: max(1.002, 1) * H
    state.decay[0] = 1.002;
    CHECK(heuristic_cost({0, 1}, state, dag, costs, 0.5) ==
          doctest::Approx(1.002 * 4.0).epsilon(1e-9));

    // the tentative swap must be undone
    CHECK(state.mapping.physical(0) == 0);
    CHECK(state.mapping.physical(1) == 1);
}

TEST_CASE("worked heuristic numbers from the cost definition") {
    // Direct check of the three documented cases using a synthetic cost
    // table: D(front) = 3, D(lookahead) = 1.
    const double unit_err = 1.0 - std::exp(-1.0);
    // line of 6: 0-1-2-3-4-5
    const auto dev = make_device(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}, unit_err);
    const RoutingCostTable costs(dev, 0.0, 0.0);
    Circuit c(6);
    c.cx(1, 5).cx(4, 5);  // after swap (1,2): front at D=3, lookahead at D=1
    const CircuitDag dag(c);
    RouterState state{identity_mapping(6, 6), {0}, {}, std::vector<double>(6, 1.0)};

    CHECK(heuristic_cost({1, 2}, state, dag, costs, 0.0) == doctest::Approx(3.0));
    state.lookahead = {1};
    CHECK(heuristic_cost({1, 2}, state, dag, costs, 0.5) == doctest::Approx(3.5));
    state.decay[1] = 1.002;
    CHECK(heuristic_cost({1, 2}, state, dag, costs, 0.5) == doctest::Approx(3.507));
}

TEST_CASE("conformant circuits route with zero swaps") {
    const auto dev = make_device(3, {{0, 1}, {1, 2}});
    Circuit c(3);
    c.h(0).cx(0, 1).cx(1, 2).measure(2, 0);
    const CircuitDag dag(c);
    const RoutingCostTable costs(dev, 0.0, 0.0);
    const auto routed = route(dag, identity_mapping(3, 3), dev, costs, RouteParams{});
    CHECK(routed.swaps_inserted == 0);
    CHECK(routed.guard_trips == 0);
    CHECK(routed.physical.size() == c.size());
    CHECK(routed.final_layout == routed.initial_layout);
    CHECK(hardware_conformant(routed.physical, dev));
    // relabeled gate list preserves kinds in order
    for (int i = 0; i < c.size(); ++i) {
        CHECK(routed.physical.gate(i).kind == c.gate(i).kind);
    }
}

TEST_CASE("opposite grid corners need exactly two swaps under uniform noise") {
    const auto dev = grid_2x3();
    Circuit c(6);
    c.cx(0, 5);  // hop distance 3 on the 2x3 grid
    const CircuitDag dag(c);
    const RoutingCostTable costs(dev, 0.0, 0.0);
    RouteParams params;
    params.decompose_swaps = false;
    const auto routed = route(dag, identity_mapping(6, 6), dev, costs, params);
    CHECK(routed.swaps_inserted == 2);
    CHECK(hardware_conformant(routed.physical, dev));
    CHECK(min_equivalence_fidelity(c, routed, 5, 77) >= 1.0 - 1e-9);
}

TEST_CASE("routed circuits preserve semantics up to the output permutation") {
    std::mt19937 rng(1234);
    const auto dev = grid_2x3();
    const RoutingCostTable costs(dev, 0.5, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int width = 2 + trial % 4;  // up to 5 logical qubits
        const Circuit c = bench::random_circuit(width, 18 + trial, rng);
        const CircuitDag dag(c);
        Mapping m0(width, 6);
        for (int q = 0; q < width; ++q) m0.assign(q, q);
        RouteParams params;
        params.decompose_swaps = (trial % 2 == 0);
        const auto routed = route(dag, m0, dev, costs, params);
        CHECK(hardware_conformant(routed.physical, dev));
        CHECK(min_equivalence_fidelity(c, routed, 4, 1000 + trial) >= 1.0 - 1e-9);
    }
}

TEST_CASE("decay bookkeeping is exact") {
    const auto dev = grid_2x3();
    const RoutingCostTable costs(dev, 0.0, 0.0);
    std::mt19937 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = bench::random_circuit(5, 30, rng);
        const CircuitDag dag(c);
        Mapping m0(5, 6);
        for (int q = 0; q < 5; ++q) m0.assign(q, q);
        RouteParams params;
        params.delta = 1e-3;
        params.decompose_swaps = false;
        const auto routed = route(dag, m0, dev, costs, params);

        // decay[q] - 1 = delta * (inserted SWAPs whose operands include q),
        // exactly; the additions are by the same constant so the float
        // comparison is exact.
        int total = 0;
        for (int q = 0; q < 5; ++q) {
            const int touches = routed.swap_touches[static_cast<size_t>(q)];
            total += touches;
            double expected = 1.0;
            for (int i = 0; i < touches; ++i) expected += params.delta;
            CHECK(routed.final_decay[static_cast<size_t>(q)] == expected);
        }
        CHECK(total <= 2 * routed.swaps_inserted);
        CHECK(total >= routed.swaps_inserted);  // each swap touches >= 1 logical
    }
}

TEST_CASE("gate-count accounting with decomposed swaps") {
    const auto dev = grid_2x3();
    const RoutingCostTable costs(dev, 0.0, 0.0);
    std::mt19937 rng(91);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = bench::random_circuit(5, 24, rng);
        const CircuitDag dag(c);
        Mapping m0(5, 6);
        for (int q = 0; q < 5; ++q) m0.assign(q, q);
        RouteParams params;  // decompose_swaps on by default
        const auto routed = route(dag, m0, dev, costs, params);
        CHECK(routed.two_qubit_gates() == c.two_qubit_count() + 3 * routed.swaps_inserted);
    }
}

TEST_CASE("routing is deterministic") {
    const auto dev = grid_2x3();
    const RoutingCostTable costs(dev, 0.5, 3.0);
    std::mt19937 rng(7);
    const Circuit c = bench::random_circuit(6, 40, rng);
    const CircuitDag dag(c);
    const auto a = route(dag, identity_mapping(6, 6), dev, costs, RouteParams{});
    const auto b = route(dag, identity_mapping(6, 6), dev, costs, RouteParams{});
    CHECK(a.physical.gates() == b.physical.gates());
    CHECK(a.final_layout == b.final_layout);
    CHECK(a.swaps_inserted == b.swaps_inserted);
}

TEST_CASE("baseline mode freezes decay and behaves identically on conformant input") {
    const auto dev = make_device(3, {{0, 1}, {1, 2}});
    Circuit c(3);
    c.cx(0, 1).cx(1, 2);
    const CircuitDag dag(c);
    const RoutingCostTable err_only(dev, 0.0, 0.0);
    const auto base = route_baseline(dag, identity_mapping(3, 3), dev, err_only, RouteParams{});
    const auto tram = route(dag, identity_mapping(3, 3), dev, err_only, RouteParams{});
    CHECK(base.physical.gates() == tram.physical.gates());
    CHECK(base.swaps_inserted == 0);
}

TEST_CASE("baseline routed output also passes the equivalence oracle") {
    // ring-cost circuit analog on the grid fixture
    const Circuit c = bench::qaoa_ring(5, 1);
    const CircuitDag dag(c);
    const auto dev = grid_2x3();
    const RoutingCostTable err_only(dev, 0.0, 0.0);
    Mapping m0(5, 6);
    for (int q = 0; q < 5; ++q) m0.assign(q, q);
    const auto base = route_baseline(dag, m0, dev, err_only, RouteParams{});
    CHECK(hardware_conformant(base.physical, dev));
    CHECK(min_equivalence_fidelity(c, base, 3, 2222) >= 1.0 - 1e-9);

    const RoutingCostTable noisy(dev, 0.5, 2.0);
    const auto tram = route(dag, m0, dev, noisy, RouteParams{});
    CHECK(min_equivalence_fidelity(c, tram, 3, 2223) >= 1.0 - 1e-9);
}

TEST_CASE("measures are pinned to the end and follow the final layout") {
    const auto dev = make_device(4, {{0, 1}, {1, 2}, {2, 3}});
    Circuit c(4);
    c.measure(0, 0).cx(0, 3).measure(3, 1);
    const CircuitDag dag(c);
    const RoutingCostTable costs(dev, 0.0, 0.0);
    const auto routed = route(dag, identity_mapping(4, 4), dev, costs, RouteParams{});
    const auto& gates = routed.physical.gates();
    REQUIRE(gates.size() >= 2);
    CHECK(gates[gates.size() - 2].kind == GateKind::Measure);
    CHECK(gates.back().kind == GateKind::Measure);
    CHECK(gates[gates.size() - 2].cbit == 0);
    CHECK(gates.back().cbit == 1);
    CHECK(gates[gates.size() - 2].qubits[0] == routed.final_layout[0]);
    CHECK(gates.back().qubits[0] == routed.final_layout[3]);
}

TEST_CASE("progress guard force-routes when the override trips it") {
    const auto dev = grid_2x3();
    Circuit c(6);
    c.cx(0, 5);
    const CircuitDag dag(c);
    const RoutingCostTable costs(dev, 0.0, 0.0);
    RouteParams params;
    params.progress_guard_override = 1;  // trip almost immediately
    params.decompose_swaps = false;
    const auto routed = route(dag, identity_mapping(6, 6), dev, costs, params);
    CHECK(routed.guard_trips >= 1);
    CHECK(hardware_conformant(routed.physical, dev));
    CHECK(min_equivalence_fidelity(c, routed, 3, 31) >= 1.0 - 1e-9);
}

TEST_CASE("normal routing never trips the guard on benchmark circuits") {
    const auto dev = grid_2x3();
    const RoutingCostTable costs(dev, 0.5, 2.0);
    for (const Circuit& c : {bench::ghz(6), bench::qft(5), bench::qaoa_ring(6, 2)}) {
        const CircuitDag dag(c);
        Mapping m0(c.num_qubits(), 6);
        for (int q = 0; q < c.num_qubits(); ++q) m0.assign(q, q);
        const auto routed = route(dag, m0, dev, costs, RouteParams{});
        CHECK(routed.guard_trips == 0);
    }
}

TEST_CASE("disconnected mapped region is unroutable") {
    const auto dev = make_device(4, {{0, 1}, {2, 3}});
    Circuit c(4);
    c.cx(0, 2);
    const CircuitDag dag(c);
    const RoutingCostTable costs(dev, 0.0, 0.0);
    CHECK_THROWS_AS((void)route(dag, identity_mapping(4, 4), dev, costs, RouteParams{}),
                    std::runtime_error);
}

TEST_SUITE_END();
