#include "tram/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace tram {

std::string_view gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::Swap: return "swap";
        case GateKind::Measure: return "measure";
        case GateKind::Barrier: return "barrier";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    static const std::pair<std::string_view, GateKind> table[] = {
        {"h", GateKind::H},           {"x", GateKind::X},
        {"y", GateKind::Y},           {"z", GateKind::Z},
        {"rx", GateKind::RX},         {"ry", GateKind::RY},
        {"rz", GateKind::RZ},         {"cx", GateKind::CX},
        {"cz", GateKind::CZ},         {"swap", GateKind::Swap},
        {"measure", GateKind::Measure}, {"barrier", GateKind::Barrier},
    };
    for (const auto& [n, k] : table) {
        if (n == name) return k;
    }
    return std::nullopt;
}

std::string to_string(const Gate& g) {
    std::string s{gate_name(g.kind)};
    if (!g.params.empty()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "(%.6g)", g.params[0]);
        s += buf;
    }
    s += ' ';
    for (size_t i = 0; i < g.qubits.size(); ++i) {
        if (i > 0) s += ',';
        s += 'q' + std::to_string(g.qubits[i]);
    }
    return s;
}

Circuit::Circuit(int num_qubits, std::string name)
    : num_qubits_(num_qubits), name_(std::move(name)) {
    if (num_qubits <= 0) {
        throw std::invalid_argument("circuit must have at least one qubit");
    }
}

void Circuit::add(Gate g) {
    const size_t expected_params = is_rotation(g.kind) ? 1 : 0;
    if (g.params.size() != expected_params) {
        throw std::invalid_argument("gate '" + std::string(gate_name(g.kind)) +
                                    "' expects " + std::to_string(expected_params) +
                                    " parameter(s), got " + std::to_string(g.params.size()));
    }
    size_t expected_qubits = g.is_two_qubit() ? 2 : 1;
    if (g.kind == GateKind::Barrier) {
        if (g.qubits.empty()) throw std::invalid_argument("barrier needs at least one qubit");
        expected_qubits = g.qubits.size();  // barriers may fence any number of qubits
    }
    if (g.qubits.size() != expected_qubits) {
        throw std::invalid_argument("gate '" + std::string(gate_name(g.kind)) +
                                    "' expects " + std::to_string(expected_qubits) +
                                    " qubit(s), got " + std::to_string(g.qubits.size()));
    }
    std::unordered_set<int> seen;
    for (int q : g.qubits) {
        if (q < 0 || q >= num_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(q) +
                                    " out of range for " + std::to_string(num_qubits_) +
                                    "-qubit circuit");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument("duplicate qubit " + std::to_string(q) + " on gate '" +
                                        std::string(gate_name(g.kind)) + "'");
        }
    }
    if (g.cbit >= 0 && g.kind != GateKind::Measure) {
        throw std::invalid_argument("classical target is only valid on measure");
    }
    g.index = static_cast<int>(gates_.size());
    gates_.push_back(std::move(g));
}

Circuit& Circuit::measure(int q, int cbit) {
    Gate g{GateKind::Measure, {q}, {}};
    g.cbit = cbit >= 0 ? cbit : q;
    add(std::move(g));
    return *this;
}

Circuit& Circuit::barrier(std::vector<int> qs) {
    if (qs.empty()) {
        qs.resize(static_cast<size_t>(num_qubits_));
        std::iota(qs.begin(), qs.end(), 0);
    }
    add(Gate{GateKind::Barrier, std::move(qs), {}});
    return *this;
}

int Circuit::two_qubit_count() const {
    return static_cast<int>(std::count_if(gates_.begin(), gates_.end(),
                                          [](const Gate& g) { return g.is_two_qubit(); }));
}

int Circuit::count(GateKind k) const {
    return static_cast<int>(std::count_if(gates_.begin(), gates_.end(),
                                          [k](const Gate& g) { return g.kind == k; }));
}

int Circuit::computational_count() const {
    return static_cast<int>(std::count_if(gates_.begin(), gates_.end(),
                                          [](const Gate& g) { return !is_meta(g.kind); }));
}

int depth(const Circuit& c, bool include_meta) {
    std::vector<int> frontier(static_cast<size_t>(c.num_qubits()), 0);
    int result = 0;
    for (const Gate& g : c.gates()) {
        if (!include_meta && is_meta(g.kind)) continue;
        int d = 0;
        for (int q : g.qubits) d = std::max(d, frontier[static_cast<size_t>(q)]);
        ++d;
        for (int q : g.qubits) frontier[static_cast<size_t>(q)] = d;
        result = std::max(result, d);
    }
    return result;
}

std::array<Gate, 3> decompose_swap(const Gate& g) {
    if (g.kind != GateKind::Swap) {
        throw std::invalid_argument("decompose_swap requires a SWAP gate");
    }
    const int a = g.qubits[0];
    const int b = g.qubits[1];
    return {Gate{GateKind::CX, {a, b}, {}}, Gate{GateKind::CX, {b, a}, {}},
            Gate{GateKind::CX, {a, b}, {}}};
}

std::pair<Circuit, std::vector<int>> compact_to_active(const Circuit& c,
                                                       const std::vector<int>& keep) {
    std::vector<char> used(static_cast<size_t>(c.num_qubits()), 0);
    for (const Gate& g : c.gates()) {
        for (int q : g.qubits) used[static_cast<size_t>(q)] = 1;
    }
    for (int q : keep) {
        if (q < 0 || q >= c.num_qubits()) {
            throw std::out_of_range("keep qubit out of range");
        }
        used[static_cast<size_t>(q)] = 1;
    }
    std::vector<int> active;
    std::vector<int> remap(static_cast<size_t>(c.num_qubits()), -1);
    for (int q = 0; q < c.num_qubits(); ++q) {
        if (used[static_cast<size_t>(q)]) {
            remap[static_cast<size_t>(q)] = static_cast<int>(active.size());
            active.push_back(q);
        }
    }
    Circuit out(std::max<int>(1, static_cast<int>(active.size())), c.name());
    for (const Gate& g : c.gates()) {
        Gate h = g;
        h.index = -1;
        for (int& q : h.qubits) q = remap[static_cast<size_t>(q)];
        out.add(std::move(h));
    }
    return {std::move(out), std::move(active)};
}

}  // namespace tram
