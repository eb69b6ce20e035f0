// Regenerates the bundled benchmark corpus under bench/. The files are
// committed; this tool exists so they can be rebuilt deterministically.

#include <filesystem>
#include <iostream>

#include "tram/benchmarks.hpp"
#include "tram/qasm.hpp"

using namespace tram;

namespace {

Circuit with_measures(Circuit c) {
    for (int q = 0; q < c.num_qubits(); ++q) c.measure(q, q);
    return c;
}

Circuit deutsch_n2() {
    Circuit c(2, "deutsch_n2");
    c.x(1).h(0).h(1).cx(0, 1).h(0).measure(0, 0);
    return c;
}

Circuit linearsolver_n3() {
    Circuit c(3, "linearsolver_n3");
    c.x(2).h(0).h(1).ry(1, 0.927295218).cx(1, 2).ry(1, -0.927295218).cx(0, 1).h(0);
    c.cx(1, 2).rz(2, 1.5707963267948966).cx(0, 2);
    return with_measures(std::move(c));
}

Circuit bell_n4() {
    Circuit c(4, "bell_n4");
    c.h(0).cx(0, 1).h(2).cx(2, 3).cx(1, 2).rz(2, 0.785398163).cx(1, 2).h(0).cx(0, 1);
    return with_measures(std::move(c));
}

Circuit error_correction3_n5() {
    Circuit c(5, "error_correction3_n5");
    c.ry(0, 0.6).cx(0, 1).cx(0, 2);           // encode
    c.cx(0, 3).cx(1, 3).cx(1, 4).cx(2, 4);    // syndrome extraction
    bench::append_toffoli(c, 3, 4, 1);        // correct the middle qubit
    c.cx(0, 1).cx(0, 2);                      // decode
    return with_measures(std::move(c));
}

Circuit hhl_n7() {
    // Phase-estimation flavoured mix: clock register 0..2, system 3..6.
    Circuit c(7, "hhl_n7");
    for (int q = 0; q < 3; ++q) c.h(q);
    c.x(4);
    double theta = 0.4;
    for (int clock = 0; clock < 3; ++clock) {
        for (int sys = 3; sys < 7; ++sys) {
            c.ry(sys, theta / 2.0).cx(clock, sys).ry(sys, -theta / 2.0).cx(clock, sys);
        }
        theta *= 2.0;
    }
    // inverse-QFT pattern on the clock
    c.h(2);
    c.rz(1, -0.7853981633974483).cx(2, 1).rz(1, 0.7853981633974483).cx(2, 1);
    c.h(1);
    c.rz(0, -0.39269908169872414).cx(2, 0).rz(0, 0.39269908169872414).cx(2, 0);
    c.rz(0, -0.7853981633974483).cx(1, 0).rz(0, 0.7853981633974483).cx(1, 0);
    c.h(0);
    c.ry(3, 0.3).cx(3, 4);
    return with_measures(std::move(c));
}

Circuit multiplier_n14() {
    // Adder core plus partial-product Toffolis, multiplier-flavoured.
    Circuit c = bench::ripple_adder(6);
    c.set_name("multiplier_n14");
    bench::append_toffoli(c, 0, 6, 12);
    bench::append_toffoli(c, 1, 7, 13);
    bench::append_toffoli(c, 2, 8, 12);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path out = argc > 1 ? argv[1] : "bench";
    std::filesystem::create_directories(out);
    const Circuit circuits[] = {
        deutsch_n2(),
        bench::fredkin(),
        linearsolver_n3(),
        bell_n4(),
        bench::vqe_ansatz(4, 2),
        error_correction3_n5(),
        bench::qaoa_ring(6, 2),
        [] {
            Circuit c = bench::vqe_ansatz(6, 4, 17);
            c.set_name("vqe_ucces_n6");
            return c;
        }(),
        hhl_n7(),
        with_measures(bench::qft(8)),
        bench::ripple_adder(3),
        bench::dense_layers(8, 4),
        bench::wstate(8),
        bench::random_su4_brickwork(10, 5),
        bench::qft(12),
        bench::qaoa_random_graph(13, 1),
        multiplier_n14(),
        bench::dense_layers(16, 4),
    };
    for (const Circuit& c : circuits) {
        const auto path = out / (c.name() + ".qasm");
        write_qasm_file(c, path.string());
        std::cout << path.string() << "  (" << c.num_qubits() << "q, " << c.size()
                  << " gates)\n";
    }
    return 0;
}
