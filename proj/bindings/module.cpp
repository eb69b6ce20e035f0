#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tram/benchmarks.hpp"
#include "tram/circuit.hpp"
#include "tram/dag.hpp"
#include "tram/device.hpp"
#include "tram/partition.hpp"
#include "tram/pipeline.hpp"
#include "tram/placement.hpp"
#include "tram/qasm.hpp"
#include "tram/router.hpp"
#include "tram/sim.hpp"

namespace py = pybind11;
using namespace tram;

namespace {

RouterMode router_mode_from_string(const std::string& name) {
    if (name == "tram") return RouterMode::Tram;
    if (name == "baseline") return RouterMode::Baseline;
    if (name == "both") return RouterMode::Both;
    throw std::invalid_argument("router must be 'tram', 'baseline' or 'both'");
}

py::dict result_to_dict(const RunRecord& record) {
    py::dict row;
    row["circuit"] = record.circuit;
    row["width"] = record.width;
    row["gates_before"] = record.gates_before;
    row["two_qubit_before"] = record.two_qubit_before;
    row["depth_before"] = record.depth_before;
    row["partition"] = record.partition_members;
    if (!record.error.empty()) row["error"] = record.error;
    py::list results;
    for (const auto& res : record.results) {
        py::dict r;
        r["router"] = res.router;
        r["gates_after"] = res.gates_after;
        r["two_qubit_after"] = res.two_qubit_after;
        r["depth_after"] = res.depth_after;
        r["swaps"] = res.swaps;
        r["global_cost"] = res.global_cost;
        r["initial_layout"] = res.initial_layout;
        r["final_layout"] = res.final_layout;
        if (res.fidelity) {
            r["fidelity"] = *res.fidelity;
        } else {
            r["fidelity"] = py::none();
        }
        r["qasm"] = to_qasm(res.routed);
        results.append(std::move(r));
    }
    row["results"] = std::move(results);
    return row;
}

}  // namespace

PYBIND11_MODULE(_tram, m) {
    m.doc() = "noise-aware quantum circuit transpiler core";

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<int, std::string>(), py::arg("num_qubits"), py::arg("name") = "circuit")
        .def_property_readonly("num_qubits", &Circuit::num_qubits)
        .def_property_readonly("name", &Circuit::name)
        .def_property_readonly("size", &Circuit::size)
        .def_property_readonly("two_qubit_count", &Circuit::two_qubit_count)
        .def("h", &Circuit::h, py::return_value_policy::reference_internal)
        .def("x", &Circuit::x, py::return_value_policy::reference_internal)
        .def("y", &Circuit::y, py::return_value_policy::reference_internal)
        .def("z", &Circuit::z, py::return_value_policy::reference_internal)
        .def("rx", &Circuit::rx, py::return_value_policy::reference_internal)
        .def("ry", &Circuit::ry, py::return_value_policy::reference_internal)
        .def("rz", &Circuit::rz, py::return_value_policy::reference_internal)
        .def("cx", &Circuit::cx, py::return_value_policy::reference_internal)
        .def("cz", &Circuit::cz, py::return_value_policy::reference_internal)
        .def("swap", &Circuit::swap, py::return_value_policy::reference_internal)
        .def("measure", &Circuit::measure, py::arg("qubit"), py::arg("cbit") = -1,
             py::return_value_policy::reference_internal)
        .def("depth", [](const Circuit& c) { return depth(c); })
        .def("to_qasm", [](const Circuit& c) { return to_qasm(c); })
        .def("__repr__", [](const Circuit& c) {
            return "<Circuit '" + c.name() + "' " + std::to_string(c.num_qubits()) +
                   "q, " + std::to_string(c.size()) + " gates>";
        });

    py::class_<DeviceModel>(m, "DeviceModel")
        .def_property_readonly("name", &DeviceModel::name)
        .def_property_readonly("num_qubits", &DeviceModel::num_qubits)
        .def("connected", &DeviceModel::connected)
        .def("__repr__", [](const DeviceModel& d) {
            return "<DeviceModel '" + d.name() + "' " + std::to_string(d.num_qubits()) +
                   "q, " + std::to_string(d.edges().size()) + " edges>";
        });

    py::class_<Partition>(m, "Partition")
        .def_readonly("members", &Partition::members)
        .def_readonly("reward_trail", &Partition::reward_trail)
        .def_readonly("mean_t2_us", &Partition::mean_t2_us);

    m.def("parse_qasm", [](const std::string& src, const std::string& name) {
              return parse_qasm(src, name);
          },
          py::arg("source"), py::arg("name") = "circuit");
    m.def("parse_qasm_file", &parse_qasm_file, py::arg("path"));
    m.def("load_device", &load_device, py::arg("path"));

    m.def("select_partition",
          [](const DeviceModel& dev, int n_target, double omega1, double omega2,
             double epsilon) {
              return select_partition(dev, RewardWeights{omega1, omega2}, n_target, epsilon);
          },
          py::arg("device"), py::arg("n_target"), py::arg("omega1") = 0.5,
          py::arg("omega2") = 0.5, py::arg("epsilon") = 1e-8);

    m.def("initial_layout",
          [](const Circuit& c, const DeviceModel& dev, double omega1, double omega2,
             double phi, double eta, int budget) {
              const Partition part =
                  select_partition(dev, RewardWeights{omega1, omega2}, c.num_qubits());
              const CircuitDag dag(c);
              const RoutingCostTable costs(dev, eta, default_dwell_time_us(dev));
              return initial_mapping(c, dag, dev, part, costs, phi, budget).layout();
          },
          py::arg("circuit"), py::arg("device"), py::arg("omega1") = 0.5,
          py::arg("omega2") = 0.5, py::arg("phi") = 1.0, py::arg("eta") = 0.5,
          py::arg("budget") = -1);

    m.def("compile",
          [](const Circuit& circuit, const DeviceModel& dev, const std::string& router,
             double omega1, double omega2, double phi, double eta, double mu, double delta,
             bool simulate, bool decompose_swaps) {
              PipelineConfig cfg;
              cfg.router = router_mode_from_string(router);
              cfg.omega1 = omega1;
              cfg.omega2 = omega2;
              cfg.phi = phi;
              cfg.eta = eta;
              cfg.mu = mu;
              cfg.delta = delta;
              cfg.simulate = simulate;
              cfg.decompose_swaps = decompose_swaps;
              return result_to_dict(compile_one(cfg, dev, circuit));
          },
          py::arg("circuit"), py::arg("device"), py::arg("router") = "tram",
          py::arg("omega1") = 0.5, py::arg("omega2") = 0.5, py::arg("phi") = 1.0,
          py::arg("eta") = 0.5, py::arg("mu") = 0.5, py::arg("delta") = 1e-3,
          py::arg("simulate") = false, py::arg("decompose_swaps") = true);

    m.def("noisy_fidelity",
          [](const Circuit& physical, const DeviceModel& dev, int max_qubits) {
              return noisy_vs_ideal_fidelity(physical, dev, NoiseSpec{}, max_qubits);
          },
          py::arg("physical_circuit"), py::arg("device"),
          py::arg("max_qubits") = kDefaultDensityQubitCap);

    auto bench_mod = m.def_submodule("bench", "synthetic benchmark builders");
    bench_mod.def("ghz", &bench::ghz, py::arg("n"));
    bench_mod.def("qft", &bench::qft, py::arg("n"));
    bench_mod.def("qaoa_ring", &bench::qaoa_ring, py::arg("n"), py::arg("layers"),
                  py::arg("seed") = 11);
    bench_mod.def("wstate", &bench::wstate, py::arg("n"));
    bench_mod.def("fredkin", &bench::fredkin);
}
