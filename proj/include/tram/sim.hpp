#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "tram/circuit.hpp"
#include "tram/device.hpp"

namespace tram {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using MatrixX = Eigen::MatrixXcd;
using VectorX = Eigen::VectorXcd;

/// A completely positive map given by its Kraus operators (all 2x2 here;
/// two-qubit noise is composed from single-qubit channels on both operands).
struct KrausChannel {
    std::vector<Matrix2> ops;

    [[nodiscard]] bool is_identity() const;
    /// Completeness defect || sum K^dag K - I ||_inf.
    [[nodiscard]] double completeness_defect() const;
};

/// {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}.
[[nodiscard]] KrausChannel depolarizing(double p);
/// {sqrt(1-gamma) I, sqrt(gamma) Z}; scales rho_01 by (1 - 2*gamma).
[[nodiscard]] KrausChannel dephasing(double gamma);
/// {|0><0| + sqrt(1-lambda)|1><1|, sqrt(lambda)|0><1|}.
[[nodiscard]] KrausChannel amplitude_damping(double lambda);

struct DecoherenceParams {
    double gamma = 0.0;   ///< dephasing probability
    double lambda = 0.0;  ///< amplitude-damping probability
};

/// Channel parameters for idling a calibrated qubit for t microseconds:
/// lambda = 1 - exp(-t/T1) and gamma = (1 - exp(-t/Tphi))/2 with
/// 1/Tphi = 1/T2 - 1/(2*T1) clamped at zero, so that damping followed by
/// dephasing scales |rho_01| by exactly exp(-t/T2).
[[nodiscard]] DecoherenceParams channel_params_from_calibration(const CalibrationRecord& rec,
                                                                double t_us);

/// Dense 2^n x 2^n density matrix. Qubit i addresses bit i of the basis
/// index (little-endian).
class DensityMatrix {
public:
    explicit DensityMatrix(int num_qubits);  // |0...0><0...0|
    static DensityMatrix from_pure(const VectorX& psi);

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] Eigen::Index dim() const { return mat_.rows(); }
    [[nodiscard]] const MatrixX& matrix() const { return mat_; }
    [[nodiscard]] MatrixX& matrix() { return mat_; }

    void apply_unitary(const Matrix2& u, int q);
    void apply_unitary(const Matrix4& u, int qa, int qb);
    void apply_channel(const KrausChannel& ch, int q);

    [[nodiscard]] double trace_real() const { return mat_.trace().real(); }
    [[nodiscard]] double hermiticity_defect() const;
    /// Smallest eigenvalue (for positivity checks).
    [[nodiscard]] double min_eigenvalue() const;
    [[nodiscard]] bool is_valid(double tol = 1e-12, double positivity_tol = 1e-10) const;

private:
    int num_qubits_;
    MatrixX mat_;
};

/// Dense statevector with the same qubit convention.
class Statevector {
public:
    explicit Statevector(int num_qubits);  // |0...0>
    explicit Statevector(VectorX amplitudes);

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] const VectorX& amplitudes() const { return vec_; }

    void apply_unitary(const Matrix2& u, int q);
    void apply_unitary(const Matrix4& u, int qa, int qb);

private:
    int num_qubits_;
    VectorX vec_;
};

/// 2x2 unitary of a single-qubit gate kind.
[[nodiscard]] Matrix2 gate_unitary_1q(GateKind kind, const std::vector<double>& params);
/// 4x4 unitary of a two-qubit kind, basis index = 2*bit(first qubit) + bit(second).
[[nodiscard]] Matrix4 gate_unitary_2q(GateKind kind);

/// Applies a gate's unitary; Measure/Barrier are no-ops here.
void apply_gate(DensityMatrix& rho, const Gate& g);
void apply_gate(Statevector& psi, const Gate& g);

/// Uhlmann fidelity F = Tr sqrt(sqrt(rho) sigma sqrt(rho)), via Hermitian
/// eigendecomposition with eigenvalue clamping; result clamped to [0,1].
[[nodiscard]] double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Noise policy for simulate_noisy. Depolarizing uses the calibrated error
/// rate of each gate; decoherence applies per-duration damping + dephasing
/// to every qubit after each gate.
struct NoiseSpec {
    bool depolarizing = true;
    bool decoherence = true;
    double single_qubit_duration_ns = 35.0;
};

inline constexpr int kDefaultDensityQubitCap = 6;
inline constexpr int kDefaultStatevectorQubitCap = 20;

struct NoisySimResult {
    DensityMatrix rho;
    std::vector<int> active;  ///< active[i] = device qubit simulated as qubit i
};

/// Simulates a physical-index circuit under the device's calibrated noise.
/// The circuit is first compacted onto the qubits it touches; the compacted
/// width must not exceed the cap. Measures and barriers are skipped.
[[nodiscard]] NoisySimResult simulate_noisy(const Circuit& physical, const DeviceModel& dev,
                                            const NoiseSpec& spec,
                                            int max_qubits = kDefaultDensityQubitCap);

/// Noiseless statevector run from a given initial state (Measure/Barrier
/// skipped).
[[nodiscard]] Statevector simulate_statevector(const Circuit& c, Statevector initial);
[[nodiscard]] Statevector simulate_statevector(const Circuit& c);

/// Uhlmann fidelity between the noisy and the noiseless output of the same
/// physical circuit, both started from |0...0>.
[[nodiscard]] double noisy_vs_ideal_fidelity(const Circuit& physical, const DeviceModel& dev,
                                             const NoiseSpec& spec,
                                             int max_qubits = kDefaultDensityQubitCap);

/// Random single-qubit product state factors (one normalized pair per qubit).
[[nodiscard]] std::vector<std::pair<Complex, Complex>> random_product_state(int num_qubits,
                                                                            std::mt19937& rng);

}  // namespace tram
