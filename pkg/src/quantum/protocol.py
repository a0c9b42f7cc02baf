# src/quantum/protocol.py
"""
Circuit synthesis for the mean-value evolution protocol and the simulated sweep
over a symmetric time grid.

The circuit prepares |+...+>, evolves under the diagonal Ising Hamiltonian with
one CNOT-RZ-CNOT block per coupling and one RZ per field, rotates every
observable qubit into the Z basis and measures the Z-parity over those qubits.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from src.core.errors import AnticommutationError, NoiseConfigError
from src.core.logger_setup import get_logger
from src.core.timeseries import TimeGrid, TimeSeries
from src.models.ising import IsingHamiltonian, XStringObservable, anticommutation_violations
from src.quantum.noise import NoiseConfig, sample_parity
from src.quantum.statevector import (
    Circuit, Gate, QuantumState, expectation_z_string, outcome_probabilities, run_circuit,
)
from src.utils.utils import timing_decorator

__all__ = [
    "MEASUREMENT_ROTATION", "RunMode", "ProtocolRun", "TimeGrid", "TimeSeries",
    "build_circuit", "measure_point", "measure_series",
]

# RY(-pi/2) maps the X eigenbasis onto the Z eigenbasis: RY(-pi/2)^dag Z RY(-pi/2) = X
MEASUREMENT_ROTATION = -np.pi / 2


class RunMode(str, Enum):
    LEVEL = "level"
    TRANSITION = "transition"


@dataclass
class ProtocolRun:
    """
    One protocol sweep. Level-extraction runs require the observable to
    anticommute with the Hamiltonian; transition runs do not.
    """
    hamiltonian: IsingHamiltonian
    observable: XStringObservable
    grid: TimeGrid
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    mode: RunMode = RunMode.LEVEL

    def __post_init__(self):
        self.mode = RunMode(self.mode)
        self.observable.validate_for(self.hamiltonian)
        if self.mode == RunMode.LEVEL:
            violations = anticommutation_violations(self.hamiltonian, self.observable)
            if violations:
                raise AnticommutationError(
                    f"{self.observable.label} does not anticommute with H; "
                    f"offending terms: {'; '.join(violations)}")
        if not self.noise.is_exact and self.noise.seed is None:
            raise NoiseConfigError("a seed is required when shots > 0")

    @property
    def seed(self) -> Optional[int]:
        return self.noise.seed


def build_circuit(hamiltonian: IsingHamiltonian, observable: XStringObservable,
                  t: float) -> Circuit:
    """
    Protocol circuit for evolution time t.

    Args:
        hamiltonian: Diagonal Ising model; couplings are emitted in declaration order, then fields
        observable: X-string whose qubits receive the measurement basis change
        t: Evolution time (units 1/J)

    Returns:
        Circuit ending just before the Z-parity measurement over the observable's qubits
    """
    observable.validate_for(hamiltonian)
    n = hamiltonian.num_spins
    circuit = Circuit(n)
    circuit.extend(Gate.hadamard(q) for q in range(n))
    for i, j, coupling in hamiltonian.couplings:
        circuit.extend([
            Gate.cnot(i, j),
            Gate.rz(j, 2.0 * coupling * t),
            Gate.cnot(i, j),
        ])
    for i, h in hamiltonian.fields:
        circuit.append(Gate.rz(i, 2.0 * h * t))
    circuit.extend(Gate.ry(q, MEASUREMENT_ROTATION) for q in observable.sorted_qubits)
    return circuit


def measure_point(run: ProtocolRun, n: int) -> float:
    """<A(t_n)> at one grid point, exact or sampled on stream n + N."""
    t = n * run.grid.tau
    circuit = build_circuit(run.hamiltonian, run.observable, t)
    state = run_circuit(circuit, QuantumState.zero(run.hamiltonian.num_spins))
    qubits = run.observable.sorted_qubits
    if run.noise.is_exact:
        return expectation_z_string(state, qubits)
    return sample_parity(outcome_probabilities(state), qubits, run.noise,
                         stream_index=n + run.grid.big_n)


@timing_decorator
def measure_series(run: ProtocolRun, n_jobs: int = 1) -> TimeSeries:
    """
    Simulate the protocol at every grid point n = -N..N.

    Grid points are independent; with n_jobs != 1 they are evaluated through
    joblib and collected in grid order, so the output does not depend on n_jobs.
    """
    logger = get_logger()
    indices = run.grid.indices()
    logger.info(
        f"Sweeping {len(indices)} grid points for {run.observable.label} "
        f"(mode={run.mode.value}, shots={run.noise.shots}, p_flip={run.noise.readout_flip_prob})")

    if n_jobs == 1:
        values = [measure_point(run, int(n)) for n in indices]
    else:
        values = Parallel(n_jobs=n_jobs)(delayed(measure_point)(run, int(n)) for n in indices)
    return TimeSeries(run.grid, np.asarray(values, dtype=float))
