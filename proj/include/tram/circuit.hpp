#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tram {

/// Gate alphabet. Rotations carry exactly one angle (radians); everything
/// else is parameter-free. Measure and Barrier are scheduling metadata and
/// never participate in routing cost.
enum class GateKind { H, X, Y, Z, RX, RY, RZ, CX, CZ, Swap, Measure, Barrier };

[[nodiscard]] constexpr bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

/// True for the computational two-qubit kinds (CX, CZ, SWAP).
[[nodiscard]] constexpr bool is_two_qubit_kind(GateKind k) {
    return k == GateKind::CX || k == GateKind::CZ || k == GateKind::Swap;
}

/// True for Measure/Barrier.
[[nodiscard]] constexpr bool is_meta(GateKind k) {
    return k == GateKind::Measure || k == GateKind::Barrier;
}

[[nodiscard]] std::string_view gate_name(GateKind k);
[[nodiscard]] std::optional<GateKind> gate_kind_from_name(std::string_view name);

struct Gate {
    GateKind kind;
    std::vector<int> qubits;      ///< distinct indices; 1 or 2 (Barrier may span more)
    std::vector<double> params;   ///< one angle for rotations, else empty
    int cbit = -1;                ///< classical target, Measure only
    int index = -1;               ///< program-order position, set by Circuit::add

    [[nodiscard]] bool is_two_qubit() const { return is_two_qubit_kind(kind); }

    friend bool operator==(const Gate& a, const Gate& b) {
        return a.kind == b.kind && a.qubits == b.qubits && a.params == b.params &&
               a.cbit == b.cbit;
    }
};

[[nodiscard]] std::string to_string(const Gate& g);

/// An ordered gate list over a fixed-width qubit register. Immutable by
/// convention once built: passes never mutate a Circuit in place.
class Circuit {
public:
    explicit Circuit(int num_qubits, std::string name = "circuit");

    /// Validates qubit bounds/distinctness and the parameter arity for the
    /// gate kind, then appends. The gate's index is assigned here.
    void add(Gate g);

    // Convenience builders, chainable.
    Circuit& h(int q) { return add1(GateKind::H, q); }
    Circuit& x(int q) { return add1(GateKind::X, q); }
    Circuit& y(int q) { return add1(GateKind::Y, q); }
    Circuit& z(int q) { return add1(GateKind::Z, q); }
    Circuit& rx(int q, double angle) { return add1(GateKind::RX, q, angle); }
    Circuit& ry(int q, double angle) { return add1(GateKind::RY, q, angle); }
    Circuit& rz(int q, double angle) { return add1(GateKind::RZ, q, angle); }
    Circuit& cx(int a, int b) { return add2(GateKind::CX, a, b); }
    Circuit& cz(int a, int b) { return add2(GateKind::CZ, a, b); }
    Circuit& swap(int a, int b) { return add2(GateKind::Swap, a, b); }
    Circuit& measure(int q, int cbit = -1);
    /// Barrier over the given qubits; empty list means the whole register.
    Circuit& barrier(std::vector<int> qs = {});

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }
    [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
    [[nodiscard]] const Gate& gate(int i) const { return gates_.at(static_cast<size_t>(i)); }
    [[nodiscard]] int size() const { return static_cast<int>(gates_.size()); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    [[nodiscard]] int two_qubit_count() const;
    [[nodiscard]] int count(GateKind k) const;
    /// Total gate count excluding Measure/Barrier.
    [[nodiscard]] int computational_count() const;

private:
    Circuit& add1(GateKind k, int q) {
        add(Gate{k, {q}, {}});
        return *this;
    }
    Circuit& add1(GateKind k, int q, double angle) {
        add(Gate{k, {q}, {angle}});
        return *this;
    }
    Circuit& add2(GateKind k, int a, int b) {
        add(Gate{k, {a, b}, {}});
        return *this;
    }

    int num_qubits_;
    std::string name_;
    std::vector<Gate> gates_;
};

/// Longest dependency-chain length, counting gates. Measure/Barrier are
/// excluded unless include_meta is set.
[[nodiscard]] int depth(const Circuit& c, bool include_meta = false);

/// SWAP(a,b) -> [CX(a,b), CX(b,a), CX(a,b)]. Rejects non-SWAP input.
[[nodiscard]] std::array<Gate, 3> decompose_swap(const Gate& g);

/// Relabels a circuit onto the sorted set of qubits it actually touches
/// (plus any extras the caller wants kept). Returns the compacted circuit
/// and the active-qubit list: new index i corresponds to old qubit
/// active[i]. Used to keep simulator width down for routed circuits that
/// live on a large device.
[[nodiscard]] std::pair<Circuit, std::vector<int>>
compact_to_active(const Circuit& c, const std::vector<int>& keep = {});

}  // namespace tram
