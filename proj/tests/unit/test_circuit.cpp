#include <doctest.h>

#include <random>
#include <set>

#include "tram/benchmarks.hpp"
#include "tram/circuit.hpp"
#include "tram/dag.hpp"
#include "tram/qasm.hpp"
#include "tram/sim.hpp"

using namespace tram;

TEST_SUITE_BEGIN("circuit");

TEST_CASE("gate validation") {
    Circuit c(2);
    CHECK_THROWS_AS(c.add(Gate{GateKind::CX, {0, 5}, {}}), std::out_of_range);
    CHECK_THROWS_AS(c.add(Gate{GateKind::CX, {1, 1}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(c.add(Gate{GateKind::H, {0}, {0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(c.add(Gate{GateKind::RX, {0}, {}}), std::invalid_argument);
    c.rx(0, 0.5).cx(0, 1);
    CHECK(c.size() == 2);
    CHECK(c.gate(1).index == 1);
}

TEST_CASE("parse single-gate program") {
    const Circuit c = parse_qasm("qreg q[2]; cx q[0],q[1];");
    CHECK(c.num_qubits() == 2);
    REQUIRE(c.size() == 1);
    CHECK(c.gate(0).kind == GateKind::CX);
    CHECK(c.gate(0).qubits == std::vector<int>{0, 1});
}

TEST_CASE("parse rejects out-of-range indices") {
    CHECK_THROWS_AS((void)parse_qasm("qreg q[2]; cx q[0],q[5];"), ParseError);
    try {
        (void)parse_qasm("qreg q[2];\ncx q[0],q[5];");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("parse rejects unsupported gates rather than dropping them") {
    CHECK_THROWS_AS((void)parse_qasm("qreg q[3]; ccx q[0],q[1],q[2];"), ParseError);
    CHECK_THROWS_AS((void)parse_qasm("qreg q[1]; t q[0];"), ParseError);
    CHECK_THROWS_AS((void)parse_qasm("qreg q[1]; rx q[0];"), ParseError);  // missing angle
}

TEST_CASE("parse full subset with header, creg, pi expressions") {
    const char* src = R"(
OPENQASM 2.0;
include "qelib1.inc";
// a comment
qreg q[3];
creg c[3];
h q[0];
rx(pi/2) q[1];
rz(-3*pi/4) q[2];
cz q[0],q[2];
swap q[1],q[2];
barrier q;
measure q[0] -> c[0];
)";
    const Circuit c = parse_qasm(src);
    CHECK(c.size() == 7);
    CHECK(c.gate(1).params[0] == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(c.gate(2).params[0] == doctest::Approx(-3 * M_PI / 4).epsilon(1e-15));
    CHECK(c.gate(5).kind == GateKind::Barrier);
    CHECK(c.gate(5).qubits.size() == 3);
    CHECK(c.gate(6).cbit == 0);
}

TEST_CASE("fredkin decomposition parses back with the same gate multiset") {
    const Circuit built = bench::fredkin();
    const Circuit parsed = parse_qasm(to_qasm(built));
    REQUIRE(parsed.size() == built.size());
    auto kinds = [](const Circuit& c) {
        std::multiset<GateKind> out;
        for (const auto& g : c.gates()) out.insert(g.kind);
        return out;
    };
    CHECK(kinds(parsed) == kinds(built));
    CHECK(parsed.count(GateKind::CX) == 8);  // 2 outer CX + 6 in the Toffoli
}

TEST_CASE("round trip reproduces the exact gate list") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        Circuit original = bench::random_circuit(2 + trial % 7, 40, rng);
        original.measure(0, 0);
        original.barrier();
        const Circuit once = parse_qasm(to_qasm(original));
        const Circuit twice = parse_qasm(to_qasm(once));
        REQUIRE(once.size() == original.size());
        CHECK(once.gates() == original.gates());
        CHECK(twice.gates() == once.gates());
    }
}

TEST_CASE("dag edges follow shared qubits") {
    Circuit c(3);
    c.cx(0, 1).cx(1, 2);
    const CircuitDag dag(c);
    CHECK(dag.successors(0) == std::vector<int>{1});
    CHECK(dag.in_degree(1) == 1);

    Circuit parallel(2);
    parallel.h(0).h(1);
    const CircuitDag dag2(parallel);
    CHECK(dag2.successors(0).empty());
    CHECK(dag2.successors(1).empty());
}

TEST_CASE("dag is acyclic for random circuits") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = bench::random_circuit(2 + trial % 10, 60, rng);
        const CircuitDag dag(c);
        const auto order = dag.topological_order();  // throws on a cycle
        CHECK(order.size() == static_cast<size_t>(c.size()));
        // Per-qubit chains: each predecessor id is smaller than the gate id.
        for (int id = 0; id < dag.size(); ++id) {
            for (int p : dag.predecessors(id)) CHECK(p < id);
        }
    }
}

TEST_CASE("depth counts the longest chain") {
    Circuit parallel(2);
    parallel.h(0).h(1);
    CHECK(depth(parallel) == 1);

    // Longest-chain enumeration by hand: CX(0,1) -> CX(1,2) -> CX(0,1) is
    // a three-gate chain through qubits 1 and 0.
    Circuit chain(3);
    chain.cx(0, 1).cx(1, 2).cx(0, 1);
    CHECK(depth(chain) == 3);

    CHECK(depth(Circuit(1)) == 0);
}

TEST_CASE("depth bounds and meta handling") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = bench::random_circuit(3 + trial % 6, 30, rng);
        std::vector<int> per_qubit(static_cast<size_t>(c.num_qubits()), 0);
        for (const auto& g : c.gates()) {
            for (int q : g.qubits) ++per_qubit[static_cast<size_t>(q)];
        }
        const int d = depth(c);
        CHECK(d >= *std::max_element(per_qubit.begin(), per_qubit.end()));
        CHECK(d <= c.size());
    }
    Circuit c(2);
    c.h(0).measure(0).barrier();
    CHECK(depth(c) == 1);
    CHECK(depth(c, /*include_meta=*/true) == 3);
}

TEST_CASE("reverse two-qubit order") {
    Circuit c(3);
    c.cx(0, 1).h(0).cx(1, 2);
    const CircuitDag dag(c);
    CHECK(reverse_two_qubit_order(dag) == std::vector<int>{2, 0});

    Circuit single(2);
    single.h(0).rx(1, 0.2);
    CHECK(reverse_two_qubit_order(CircuitDag(single)).empty());

    // First element is the last two-qubit gate of the program.
    const Circuit fredkin = bench::fredkin();
    const CircuitDag fdag(fredkin);
    const auto order = reverse_two_qubit_order(fdag);
    int last_two_qubit = -1;
    for (const auto& g : fredkin.gates()) {
        if (g.is_two_qubit()) last_two_qubit = g.index;
    }
    CHECK(order.front() == last_two_qubit);
}

TEST_CASE("reverse order is a reverse topological permutation") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = bench::random_circuit(3 + trial % 5, 40, rng);
        const CircuitDag dag(c);
        const auto order = reverse_two_qubit_order(dag);
        std::set<int> expected;
        for (const auto& g : c.gates()) {
            if (g.is_two_qubit()) expected.insert(g.index);
        }
        CHECK(order.size() == expected.size());
        std::set<int> got(order.begin(), order.end());
        CHECK(got == expected);
        // If g precedes h in the dag, h appears before g here. Program index
        // order is consistent with the dag, so indices must descend.
        for (size_t i = 1; i < order.size(); ++i) CHECK(order[i - 1] > order[i]);
    }
}

TEST_CASE("swap decomposition") {
    const Gate swap{GateKind::Swap, {0, 1}, {}};
    const auto cxs = decompose_swap(swap);
    CHECK(cxs[0].qubits == std::vector<int>{0, 1});
    CHECK(cxs[1].qubits == std::vector<int>{1, 0});
    CHECK(cxs[2].qubits == std::vector<int>{0, 1});

    const auto wide = decompose_swap(Gate{GateKind::Swap, {2, 5}, {}});
    CHECK(wide[1].qubits == std::vector<int>{5, 2});

    CHECK_THROWS_AS((void)decompose_swap(Gate{GateKind::CX, {0, 1}, {}}), std::invalid_argument);
}

TEST_CASE("swap decomposition composes to the 4x4 swap unitary") {
    // Oracle: multiply the three CX unitaries as explicit 4x4 matrices.
    const Matrix4 cx_ab = gate_unitary_2q(GateKind::CX);
    // CX(b,a) in the (a,b) basis ordering: permute control/target bits.
    Matrix4 cx_ba = Matrix4::Zero();
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            const int ra = row >> 1, rb = row & 1;
            const int ca = col >> 1, cb = col & 1;
            cx_ba(row, col) = cx_ab(rb * 2 + ra, cb * 2 + ca);
        }
    }
    const Matrix4 product = cx_ab * cx_ba * cx_ab;
    const Matrix4 swap = gate_unitary_2q(GateKind::Swap);
    CHECK((product - swap).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("compact_to_active relabels onto touched qubits") {
    Circuit c(10);
    c.h(7).cx(7, 2);
    const auto [compact, active] = compact_to_active(c);
    CHECK(active == std::vector<int>{2, 7});
    CHECK(compact.num_qubits() == 2);
    CHECK(compact.gate(1).qubits == std::vector<int>{1, 0});
}

TEST_SUITE_END();
