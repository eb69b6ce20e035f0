#include "tram/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tram {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_probability(double p, const char* what) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
    }
}

// Applies a 2x2 operator to qubit q of every column of a 2^n x m block.
// Statevectors are the m = 1 case; density matrices call it twice.
template <typename Mat>
void apply_1q_left(const Matrix2& u, int q, Mat& m) {
    const Eigen::Index dim = m.rows();
    const Eigen::Index stride = Eigen::Index{1} << q;
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
            for (Eigen::Index off = 0; off < stride; ++off) {
                const Eigen::Index i0 = base + off;
                const Eigen::Index i1 = i0 + stride;
                const Complex a = m(i0, col);
                const Complex b = m(i1, col);
                m(i0, col) = u(0, 0) * a + u(0, 1) * b;
                m(i1, col) = u(1, 0) * a + u(1, 1) * b;
            }
        }
    }
}

// Same for a 4x4 operator over qubits (qa, qb); basis row index of u is
// 2*bit(qa) + bit(qb).
template <typename Mat>
void apply_2q_left(const Matrix4& u, int qa, int qb, Mat& m) {
    const Eigen::Index dim = m.rows();
    const Eigen::Index sa = Eigen::Index{1} << qa;
    const Eigen::Index sb = Eigen::Index{1} << qb;
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            if ((i & sa) || (i & sb)) continue;  // visit each group at its 00 member
            const Eigen::Index i00 = i;
            const Eigen::Index i01 = i | sb;
            const Eigen::Index i10 = i | sa;
            const Eigen::Index i11 = i | sa | sb;
            const Complex a00 = m(i00, col);
            const Complex a01 = m(i01, col);
            const Complex a10 = m(i10, col);
            const Complex a11 = m(i11, col);
            m(i00, col) = u(0, 0) * a00 + u(0, 1) * a01 + u(0, 2) * a10 + u(0, 3) * a11;
            m(i01, col) = u(1, 0) * a00 + u(1, 1) * a01 + u(1, 2) * a10 + u(1, 3) * a11;
            m(i10, col) = u(2, 0) * a00 + u(2, 1) * a01 + u(2, 2) * a10 + u(2, 3) * a11;
            m(i11, col) = u(3, 0) * a00 + u(3, 1) * a01 + u(3, 2) * a10 + u(3, 3) * a11;
        }
    }
}

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}
Matrix2 pauli_y() {
    Matrix2 m;
    m << 0, -kI, kI, 0;
    return m;
}
Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace

bool KrausChannel::is_identity() const {
    return ops.size() == 1 && (ops[0] - Matrix2::Identity()).cwiseAbs().maxCoeff() == 0.0;
}

double KrausChannel::completeness_defect() const {
    Matrix2 sum = Matrix2::Zero();
    for (const auto& k : ops) sum += k.adjoint() * k;
    return (sum - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

KrausChannel depolarizing(double p) {
    check_probability(p, "depolarizing probability");
    if (p == 0.0) return KrausChannel{{Matrix2::Identity()}};
    KrausChannel ch;
    ch.ops.push_back(std::sqrt(1.0 - p) * Matrix2::Identity());
    ch.ops.push_back(std::sqrt(p / 3.0) * pauli_x());
    ch.ops.push_back(std::sqrt(p / 3.0) * pauli_y());
    ch.ops.push_back(std::sqrt(p / 3.0) * pauli_z());
    return ch;
}

KrausChannel dephasing(double gamma) {
    check_probability(gamma, "dephasing probability");
    if (gamma == 0.0) return KrausChannel{{Matrix2::Identity()}};
    KrausChannel ch;
    ch.ops.push_back(std::sqrt(1.0 - gamma) * Matrix2::Identity());
    ch.ops.push_back(std::sqrt(gamma) * pauli_z());
    return ch;
}

KrausChannel amplitude_damping(double lambda) {
    check_probability(lambda, "damping probability");
    KrausChannel ch;
    Matrix2 k0;
    k0 << 1, 0, 0, std::sqrt(1.0 - lambda);
    Matrix2 k1;
    k1 << 0, std::sqrt(lambda), 0, 0;
    ch.ops.push_back(k0);
    if (lambda > 0.0) ch.ops.push_back(k1);
    return ch;
}

DecoherenceParams channel_params_from_calibration(const CalibrationRecord& rec, double t_us) {
    if (t_us < 0) throw std::invalid_argument("duration must be nonnegative");
    DecoherenceParams p;
    p.lambda = 1.0 - std::exp(-t_us / rec.t1_us);
    const double inv_tphi = std::max(0.0, 1.0 / rec.t2_us - 1.0 / (2.0 * rec.t1_us));
    p.gamma = (1.0 - std::exp(-t_us * inv_tphi)) / 2.0;
    return p;
}

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) throw std::invalid_argument("bad qubit count");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    mat_ = MatrixX::Zero(dim, dim);
    mat_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const VectorX& psi) {
    int n = 0;
    while ((Eigen::Index{1} << n) < psi.size()) ++n;
    if (n == 0 || (Eigen::Index{1} << n) != psi.size()) {
        throw std::invalid_argument("statevector length must be a power of two >= 2");
    }
    DensityMatrix rho(n);
    rho.mat_ = psi * psi.adjoint();
    return rho;
}

void DensityMatrix::apply_unitary(const Matrix2& u, int q) {
    apply_1q_left(u, q, mat_);
    MatrixX adj = mat_.adjoint();
    apply_1q_left(u, q, adj);
    mat_ = adj.adjoint();
}

void DensityMatrix::apply_unitary(const Matrix4& u, int qa, int qb) {
    apply_2q_left(u, qa, qb, mat_);
    MatrixX adj = mat_.adjoint();
    apply_2q_left(u, qa, qb, adj);
    mat_ = adj.adjoint();
}

void DensityMatrix::apply_channel(const KrausChannel& ch, int q) {
    if (ch.is_identity()) return;
    MatrixX out = MatrixX::Zero(mat_.rows(), mat_.cols());
    for (const auto& k : ch.ops) {
        MatrixX term = mat_;
        apply_1q_left(k, q, term);
        MatrixX adj = term.adjoint();
        apply_1q_left(k, q, adj);
        out += adj.adjoint();
    }
    mat_ = std::move(out);
}

double DensityMatrix::hermiticity_defect() const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<MatrixX> solver((mat_ + mat_.adjoint()) / 2.0);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid(double tol, double positivity_tol) const {
    return hermiticity_defect() < tol && std::abs(trace_real() - 1.0) < tol &&
           min_eigenvalue() > -positivity_tol;
}

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) throw std::invalid_argument("bad qubit count");
    vec_ = VectorX::Zero(Eigen::Index{1} << num_qubits);
    vec_(0) = 1.0;
}

Statevector::Statevector(VectorX amplitudes) : vec_(std::move(amplitudes)) {
    num_qubits_ = 0;
    while ((Eigen::Index{1} << num_qubits_) < vec_.size()) ++num_qubits_;
    if ((Eigen::Index{1} << num_qubits_) != vec_.size()) {
        throw std::invalid_argument("statevector length must be a power of two");
    }
}

void Statevector::apply_unitary(const Matrix2& u, int q) { apply_1q_left(u, q, vec_); }

void Statevector::apply_unitary(const Matrix4& u, int qa, int qb) {
    apply_2q_left(u, qa, qb, vec_);
}

Matrix2 gate_unitary_1q(GateKind kind, const std::vector<double>& params) {
    Matrix2 m;
    switch (kind) {
        case GateKind::H:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case GateKind::X: return pauli_x();
        case GateKind::Y: return pauli_y();
        case GateKind::Z: return pauli_z();
        case GateKind::RX: {
            const double t = params.at(0) / 2.0;
            m << std::cos(t), -kI * std::sin(t), -kI * std::sin(t), std::cos(t);
            return m;
        }
        case GateKind::RY: {
            const double t = params.at(0) / 2.0;
            m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
            return m;
        }
        case GateKind::RZ: {
            const double t = params.at(0) / 2.0;
            m << std::exp(-kI * t), 0, 0, std::exp(kI * t);
            return m;
        }
        default: throw std::invalid_argument("not a single-qubit unitary kind");
    }
}

Matrix4 gate_unitary_2q(GateKind kind) {
    Matrix4 m = Matrix4::Identity();
    switch (kind) {
        case GateKind::CX:
            m << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
            return m;
        case GateKind::CZ:
            m(3, 3) = -1;
            return m;
        case GateKind::Swap:
            m << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
            return m;
        default: throw std::invalid_argument("not a two-qubit unitary kind");
    }
}

namespace {

template <typename State>
void apply_gate_impl(State& state, const Gate& g) {
    if (is_meta(g.kind)) return;
    if (g.is_two_qubit()) {
        state.apply_unitary(gate_unitary_2q(g.kind), g.qubits[0], g.qubits[1]);
    } else {
        state.apply_unitary(gate_unitary_1q(g.kind, g.params), g.qubits[0]);
    }
}

}  // namespace

void apply_gate(DensityMatrix& rho, const Gate& g) { apply_gate_impl(rho, g); }
void apply_gate(Statevector& psi, const Gate& g) { apply_gate_impl(psi, g); }

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("dimension mismatch");
    if (!rho.is_valid(1e-9, 1e-8) || !sigma.is_valid(1e-9, 1e-8)) {
        throw std::invalid_argument("uhlmann_fidelity requires valid density matrices");
    }
    Eigen::SelfAdjointEigenSolver<MatrixX> rho_solver(
        (rho.matrix() + rho.matrix().adjoint()) / 2.0);
    Eigen::VectorXd vals = rho_solver.eigenvalues().cwiseMax(0.0);
    const MatrixX sqrt_rho = rho_solver.eigenvectors() *
                             vals.cwiseSqrt().asDiagonal() *
                             rho_solver.eigenvectors().adjoint();
    const MatrixX inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<MatrixX> inner_solver((inner + inner.adjoint()) / 2.0);
    const double f = inner_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(f, 0.0, 1.0);
}

NoisySimResult simulate_noisy(const Circuit& physical, const DeviceModel& dev,
                              const NoiseSpec& spec, int max_qubits) {
    auto [circuit, active] = compact_to_active(physical);
    const int n = circuit.num_qubits();
    if (static_cast<int>(active.size()) > max_qubits) {
        throw std::invalid_argument("circuit touches " + std::to_string(active.size()) +
                                    " qubits, above the density-matrix cap of " +
                                    std::to_string(max_qubits));
    }
    DensityMatrix rho(n);
    auto idle_all = [&](double duration_ns) {
        if (!spec.decoherence || duration_ns <= 0) return;
        const double t_us = duration_ns / 1000.0;
        for (int q = 0; q < n; ++q) {
            const auto params =
                channel_params_from_calibration(dev.qubit(active[static_cast<size_t>(q)]), t_us);
            rho.apply_channel(amplitude_damping(params.lambda), q);
            rho.apply_channel(dephasing(params.gamma), q);
        }
    };
    for (const Gate& g : circuit.gates()) {
        if (is_meta(g.kind)) continue;
        apply_gate(rho, g);
        if (g.is_two_qubit()) {
            const auto& edge = dev.edge(active[static_cast<size_t>(g.qubits[0])],
                                        active[static_cast<size_t>(g.qubits[1])]);
            if (spec.depolarizing) {
                rho.apply_channel(depolarizing(edge.two_qubit_error), g.qubits[0]);
                rho.apply_channel(depolarizing(edge.two_qubit_error), g.qubits[1]);
            }
            idle_all(edge.gate_duration_ns);
        } else {
            if (spec.depolarizing) {
                const auto& rec = dev.qubit(active[static_cast<size_t>(g.qubits[0])]);
                rho.apply_channel(depolarizing(rec.single_qubit_error), g.qubits[0]);
            }
            idle_all(spec.single_qubit_duration_ns);
        }
    }
    return NoisySimResult{std::move(rho), std::move(active)};
}

Statevector simulate_statevector(const Circuit& c, Statevector initial) {
    if (initial.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("initial state width mismatch");
    }
    for (const Gate& g : c.gates()) apply_gate(initial, g);
    return initial;
}

Statevector simulate_statevector(const Circuit& c) {
    if (c.num_qubits() > kDefaultStatevectorQubitCap) {
        throw std::invalid_argument("circuit too wide for statevector simulation");
    }
    return simulate_statevector(c, Statevector(c.num_qubits()));
}

double noisy_vs_ideal_fidelity(const Circuit& physical, const DeviceModel& dev,
                               const NoiseSpec& spec, int max_qubits) {
    auto noisy = simulate_noisy(physical, dev, spec, max_qubits);
    auto [compacted, active] = compact_to_active(physical);
    const Statevector ideal = simulate_statevector(compacted, Statevector(compacted.num_qubits()));
    return uhlmann_fidelity(noisy.rho, DensityMatrix::from_pure(ideal.amplitudes()));
}

std::vector<std::pair<Complex, Complex>> random_product_state(int num_qubits,
                                                              std::mt19937& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::pair<Complex, Complex>> factors;
    factors.reserve(static_cast<size_t>(num_qubits));
    for (int q = 0; q < num_qubits; ++q) {
        Complex a{normal(rng), normal(rng)};
        Complex b{normal(rng), normal(rng)};
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        factors.emplace_back(a / norm, b / norm);
    }
    return factors;
}

}  // namespace tram
