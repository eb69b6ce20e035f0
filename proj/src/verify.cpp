#include "tram/verify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tram {

double routed_state_fidelity(const Circuit& logical, const Circuit& routed_physical,
                             const std::vector<int>& initial_layout,
                             const std::vector<int>& final_layout,
                             const std::vector<std::pair<Complex, Complex>>& input_factors) {
    const int n_logical = logical.num_qubits();
    if (static_cast<int>(initial_layout.size()) != n_logical ||
        static_cast<int>(final_layout.size()) != n_logical ||
        static_cast<int>(input_factors.size()) != n_logical) {
        throw std::invalid_argument("layout/state width mismatch");
    }

    std::vector<int> keep = initial_layout;
    keep.insert(keep.end(), final_layout.begin(), final_layout.end());
    const auto [compacted, active] = compact_to_active(routed_physical, keep);
    const int n_physical = compacted.num_qubits();
    if (n_physical > kDefaultStatevectorQubitCap) {
        throw std::invalid_argument("routed circuit touches too many qubits to verify");
    }
    std::vector<int> to_compact(static_cast<size_t>(routed_physical.num_qubits()), -1);
    for (size_t i = 0; i < active.size(); ++i) {
        to_compact[static_cast<size_t>(active[i])] = static_cast<int>(i);
    }

    // Input product state on the physical register: logical q starts at its
    // initial position, everything else in |0>.
    const Eigen::Index dim = Eigen::Index{1} << n_physical;
    std::vector<std::pair<Complex, Complex>> physical_factors(
        static_cast<size_t>(n_physical), {Complex{1.0, 0.0}, Complex{0.0, 0.0}});
    for (int q = 0; q < n_logical; ++q) {
        physical_factors[static_cast<size_t>(
            to_compact[static_cast<size_t>(initial_layout[q])])] =
            input_factors[static_cast<size_t>(q)];
    }
    VectorX initial(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Complex amp{1.0, 0.0};
        for (int p = 0; p < n_physical; ++p) {
            const auto& f = physical_factors[static_cast<size_t>(p)];
            amp *= ((b >> p) & 1) ? f.second : f.first;
        }
        initial(b) = amp;
    }
    const Statevector actual = simulate_statevector(compacted, Statevector(initial));

    // Ideal logical output from the same input.
    VectorX logical_in(Eigen::Index{1} << n_logical);
    for (Eigen::Index b = 0; b < logical_in.size(); ++b) {
        Complex amp{1.0, 0.0};
        for (int q = 0; q < n_logical; ++q) {
            const auto& f = input_factors[static_cast<size_t>(q)];
            amp *= ((b >> q) & 1) ? f.second : f.first;
        }
        logical_in(b) = amp;
    }
    const Statevector ideal = simulate_statevector(logical, Statevector(logical_in));

    // Embed the ideal state at the final positions: amplitude of a physical
    // basis state is the ideal amplitude of its logical bits when every
    // unmapped qubit is 0, and 0 otherwise.
    Eigen::Index mapped_mask = 0;
    for (int q = 0; q < n_logical; ++q) {
        mapped_mask |= Eigen::Index{1} << to_compact[static_cast<size_t>(final_layout[q])];
    }
    VectorX expected = VectorX::Zero(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        if ((b & ~mapped_mask) != 0) continue;
        Eigen::Index logical_bits = 0;
        for (int q = 0; q < n_logical; ++q) {
            const int p = to_compact[static_cast<size_t>(final_layout[q])];
            if ((b >> p) & 1) logical_bits |= Eigen::Index{1} << q;
        }
        expected(b) = ideal.amplitudes()(logical_bits);
    }
    return std::abs((expected.adjoint() * actual.amplitudes())(0));
}

double min_equivalence_fidelity(const Circuit& logical, const RoutedCircuit& routed,
                                int random_states, unsigned seed) {
    const int n = logical.num_qubits();
    std::vector<std::pair<Complex, Complex>> zeros(static_cast<size_t>(n),
                                                   {Complex{1.0, 0.0}, Complex{0.0, 0.0}});
    double worst = routed_state_fidelity(logical, routed.physical, routed.initial_layout,
                                         routed.final_layout, zeros);
    std::mt19937 rng(seed);
    for (int trial = 0; trial < random_states; ++trial) {
        const auto factors = random_product_state(n, rng);
        worst = std::min(worst, routed_state_fidelity(logical, routed.physical,
                                                      routed.initial_layout,
                                                      routed.final_layout, factors));
    }
    return worst;
}

}  // namespace tram
