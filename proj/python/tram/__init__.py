"""Noise-aware quantum circuit transpiler.

Thin wrapper over the native module: circuit parsing, device models,
calibration-driven partitioning, initial placement, decay-aware routing and
a small density-matrix simulator for fidelity checks.
"""

try:
    from ._tram import *  # noqa: F401,F403  (installed package layout)
    from ._tram import bench  # noqa: F401
except ImportError:  # in-tree test layout: module next to the package
    from _tram import *  # noqa: F401,F403
    from _tram import bench  # noqa: F401

__all__ = [
    "Circuit",
    "DeviceModel",
    "Partition",
    "bench",
    "compile",
    "initial_layout",
    "load_device",
    "noisy_fidelity",
    "parse_qasm",
    "parse_qasm_file",
    "select_partition",
]
