#pragma once

#include <random>

#include "tram/router.hpp"
#include "tram/sim.hpp"

namespace tram {

/// Statevector fidelity between a routed physical circuit and the original
/// logical circuit, adjusted for the output permutation implied by the
/// final layout. Both run from the same product input state (one
/// normalized amplitude pair per logical qubit); unmapped physical qubits
/// start in |0>. Measures and barriers are ignored.
[[nodiscard]] double routed_state_fidelity(
    const Circuit& logical, const Circuit& routed_physical,
    const std::vector<int>& initial_layout, const std::vector<int>& final_layout,
    const std::vector<std::pair<Complex, Complex>>& input_factors);

/// Runs the fidelity check on the all-zeros state plus `random_states`
/// random product states; returns the minimum fidelity observed.
[[nodiscard]] double min_equivalence_fidelity(const Circuit& logical,
                                              const RoutedCircuit& routed, int random_states,
                                              unsigned seed);

}  // namespace tram
