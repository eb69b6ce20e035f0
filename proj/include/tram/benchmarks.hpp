#pragma once

#include <random>

#include "tram/circuit.hpp"

namespace tram {
namespace bench {

/// Synthetic benchmark builders in the supported gate alphabet. Controlled
/// phases and Toffolis are pre-decomposed into {1q rotations, H, CX}.

[[nodiscard]] Circuit ghz(int n);
[[nodiscard]] Circuit qft(int n);
/// Ring ZZ-cost layers with RX mixers.
[[nodiscard]] Circuit qaoa_ring(int n, int layers, unsigned seed = 11);
/// QAOA-style cost layers over a random graph (independent-set flavour).
[[nodiscard]] Circuit qaoa_random_graph(int n, int layers, unsigned seed = 23);
/// Cuccaro-style ripple-carry adder on `bits`-bit registers (2*bits + 2 qubits).
[[nodiscard]] Circuit ripple_adder(int bits);
[[nodiscard]] Circuit wstate(int n);
/// Hardware-efficient ansatz: RY layers with linear CX entanglers.
[[nodiscard]] Circuit vqe_ansatz(int n, int layers, unsigned seed = 7);
/// Dense feed-forward-style layers mixing rotations with neighbour and
/// skip CX connections.
[[nodiscard]] Circuit dense_layers(int n, int layers, unsigned seed = 5);
/// Quantum-volume-style random SU(4) brickwork, decomposed.
[[nodiscard]] Circuit random_su4_brickwork(int n, int layers, unsigned seed = 13);

/// Fredkin (controlled-SWAP) decomposition over {H, RZ, CX}.
[[nodiscard]] Circuit fredkin();
void append_toffoli(Circuit& c, int a, int b, int target);

/// Random circuit over the full alphabet minus Measure/Barrier;
/// two-qubit gates appear with probability ~0.5.
[[nodiscard]] Circuit random_circuit(int n, int num_gates, std::mt19937& rng);

}  // namespace bench
}  // namespace tram
