#include "tram/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tram {
namespace bench {
namespace {

constexpr double kPi = 3.14159265358979323846;

void append_t(Circuit& c, int q) { c.rz(q, kPi / 4.0); }
void append_tdg(Circuit& c, int q) { c.rz(q, -kPi / 4.0); }

/// Controlled-phase up to global phase: cp(theta) on (control, target).
void append_cphase(Circuit& c, int control, int target, double theta) {
    c.rz(control, theta / 2.0);
    c.cx(control, target);
    c.rz(target, -theta / 2.0);
    c.cx(control, target);
    c.rz(target, theta / 2.0);
}

void append_cry(Circuit& c, int control, int target, double theta) {
    c.ry(target, theta / 2.0);
    c.cx(control, target);
    c.ry(target, -theta / 2.0);
    c.cx(control, target);
}

}  // namespace

void append_toffoli(Circuit& c, int a, int b, int target) {
    c.h(target);
    c.cx(b, target);
    append_tdg(c, target);
    c.cx(a, target);
    append_t(c, target);
    c.cx(b, target);
    append_tdg(c, target);
    c.cx(a, target);
    append_t(c, b);
    append_t(c, target);
    c.h(target);
    c.cx(a, b);
    append_t(c, a);
    append_tdg(c, b);
    c.cx(a, b);
}

Circuit ghz(int n) {
    Circuit c(n, "ghz_n" + std::to_string(n));
    c.h(0);
    for (int i = 1; i < n; ++i) c.cx(i - 1, i);
    return c;
}

Circuit qft(int n) {
    Circuit c(n, "qft_n" + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        c.h(i);
        for (int j = i + 1; j < n; ++j) {
            append_cphase(c, j, i, kPi / std::pow(2.0, j - i));
        }
    }
    for (int i = 0; i < n / 2; ++i) c.swap(i, n - 1 - i);
    return c;
}

Circuit qaoa_ring(int n, int layers, unsigned seed) {
    Circuit c(n, "qaoa_n" + std::to_string(n));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(0.1, kPi - 0.1);
    for (int i = 0; i < n; ++i) c.h(i);
    for (int l = 0; l < layers; ++l) {
        const double gamma = angle(rng);
        const double beta = angle(rng);
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            c.cx(i, j);
            c.rz(j, gamma);
            c.cx(i, j);
        }
        for (int i = 0; i < n; ++i) c.rx(i, beta);
    }
    return c;
}

Circuit qaoa_random_graph(int n, int layers, unsigned seed) {
    Circuit c(n, "is_n" + std::to_string(n));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(0.1, kPi - 0.1);
    std::uniform_int_distribution<int> vertex(0, n - 1);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 2 * n; ++i) {
        int a = vertex(rng);
        int b = vertex(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (int i = 0; i < n; ++i) c.h(i);
    for (int l = 0; l < layers; ++l) {
        const double gamma = angle(rng);
        const double beta = angle(rng);
        for (const auto& [a, b] : edges) {
            c.cx(a, b);
            c.rz(b, gamma);
            c.cx(a, b);
        }
        for (int i = 0; i < n; ++i) c.rx(i, beta);
    }
    return c;
}

Circuit ripple_adder(int bits) {
    // Registers: a[0..bits), b[0..bits), carry-in, carry-out.
    const int n = 2 * bits + 2;
    Circuit c(n, "add_n" + std::to_string(n));
    const auto a = [&](int i) { return i; };
    const auto b = [&](int i) { return bits + i; };
    const int cin = 2 * bits;
    const int cout = 2 * bits + 1;
    // Load |a> = 1...1 and |b> = 1 so the adder has nontrivial input.
    for (int i = 0; i < bits; ++i) c.x(a(i));
    c.x(b(0));
    auto maj = [&](int x, int y, int z) {
        c.cx(z, y);
        c.cx(z, x);
        append_toffoli(c, x, y, z);
    };
    auto uma = [&](int x, int y, int z) {
        append_toffoli(c, x, y, z);
        c.cx(z, x);
        c.cx(x, y);
    };
    maj(cin, b(0), a(0));
    for (int i = 1; i < bits; ++i) maj(a(i - 1), b(i), a(i));
    c.cx(a(bits - 1), cout);
    for (int i = bits - 1; i >= 1; --i) uma(a(i - 1), b(i), a(i));
    uma(cin, b(0), a(0));
    for (int i = 0; i < bits; ++i) c.measure(b(i), i);
    c.measure(cout, bits);
    return c;
}

Circuit wstate(int n) {
    Circuit c(n, "wstate_n" + std::to_string(n));
    c.x(0);
    for (int i = 0; i < n - 1; ++i) {
        const double theta = 2.0 * std::acos(std::sqrt(1.0 / static_cast<double>(n - i)));
        append_cry(c, i, i + 1, theta);
        c.cx(i + 1, i);
    }
    return c;
}

Circuit vqe_ansatz(int n, int layers, unsigned seed) {
    Circuit c(n, "vqe_n" + std::to_string(n));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int l = 0; l < layers; ++l) {
        for (int i = 0; i < n; ++i) c.ry(i, angle(rng));
        for (int i = 0; i < n; ++i) c.rz(i, angle(rng));
        for (int i = 0; i + 1 < n; ++i) c.cx(i, i + 1);
    }
    for (int i = 0; i < n; ++i) c.ry(i, angle(rng));
    return c;
}

Circuit dense_layers(int n, int layers, unsigned seed) {
    // Dense variational layers: rotations plus randomly paired CX links,
    // the way dense classifier ansaetze entangle across the register.
    Circuit c(n, "dnn_n" + std::to_string(n));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    for (int l = 0; l < layers; ++l) {
        for (int i = 0; i < n; ++i) c.ry(i, angle(rng));
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i + 1 < n; i += 2) {
            c.cx(order[static_cast<size_t>(i)], order[static_cast<size_t>(i + 1)]);
        }
        for (int i = 0; i < n; ++i) c.rz(i, angle(rng));
    }
    return c;
}

Circuit random_su4_brickwork(int n, int layers, unsigned seed) {
    // Quantum-volume style: each layer pairs the qubits under a fresh random
    // permutation and applies a decomposed SU(4) template to every pair.
    Circuit c(n, "qv_n" + std::to_string(n));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    auto su4 = [&](int a, int b) {
        c.rz(a, angle(rng)).ry(a, angle(rng)).rz(a, angle(rng));
        c.rz(b, angle(rng)).ry(b, angle(rng)).rz(b, angle(rng));
        c.cx(a, b);
        c.ry(a, angle(rng)).rz(b, angle(rng));
        c.cx(b, a);
        c.ry(a, angle(rng)).rz(b, angle(rng));
        c.cx(a, b);
        c.rz(a, angle(rng)).ry(a, angle(rng));
        c.rz(b, angle(rng)).ry(b, angle(rng));
    };
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    for (int l = 0; l < layers; ++l) {
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i + 1 < n; i += 2) {
            su4(order[static_cast<size_t>(i)], order[static_cast<size_t>(i + 1)]);
        }
    }
    return c;
}

Circuit fredkin() {
    // Controlled-SWAP(q0; q1, q2) = CX(2,1) . Toffoli(0,1,2) . CX(2,1).
    Circuit c(3, "fredkin_n3");
    c.cx(2, 1);
    append_toffoli(c, 0, 1, 2);
    c.cx(2, 1);
    return c;
}

Circuit random_circuit(int n, int num_gates, std::mt19937& rng) {
    if (n < 2) throw std::invalid_argument("random circuits need at least two qubits");
    Circuit c(n, "random");
    std::uniform_int_distribution<int> qubit(0, n - 1);
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int i = 0; i < num_gates; ++i) {
        const int choice = pick(rng);
        if (choice < 5) {
            int a = qubit(rng);
            int b = qubit(rng);
            while (b == a) b = qubit(rng);
            if (choice < 3) {
                c.cx(a, b);
            } else if (choice == 3) {
                c.cz(a, b);
            } else {
                c.swap(a, b);
            }
        } else {
            const int q = qubit(rng);
            switch (choice) {
                case 5: c.h(q); break;
                case 6: c.x(q); break;
                case 7: c.rx(q, angle(rng)); break;
                case 8: c.ry(q, angle(rng)); break;
                default: c.rz(q, angle(rng)); break;
            }
        }
    }
    return c;
}

}  // namespace bench
}  // namespace tram
