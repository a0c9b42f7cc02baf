# tests/helpers.py
"""Dense-matrix references and random instance generators shared by the tests."""
import itertools
from functools import reduce
from typing import List, Optional, Tuple

import numpy as np

from src.models.ising import IsingHamiltonian, XStringObservable

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dense_operator(num_qubits: int, factors: dict) -> np.ndarray:
    """Tensor product with factors[q] on qubit q; bit q of the basis index is qubit q."""
    ops = [factors.get(q, I2) for q in reversed(range(num_qubits))]
    return reduce(np.kron, ops)


def dense_z_string(num_qubits: int, qubits) -> np.ndarray:
    return dense_operator(num_qubits, {q: Z for q in qubits})


def dense_x_string(num_qubits: int, qubits) -> np.ndarray:
    return dense_operator(num_qubits, {q: X for q in qubits})


def dense_hamiltonian(h: IsingHamiltonian) -> np.ndarray:
    dim = 2 ** h.num_spins
    total = np.zeros((dim, dim), dtype=complex)
    for i, j, coupling in h.couplings:
        total += coupling * dense_z_string(h.num_spins, [i, j])
    for i, field in h.fields:
        total += field * dense_z_string(h.num_spins, [i])
    return total


def random_hamiltonian(rng: np.random.Generator, num_spins: int,
                       values=(-1.0, 1.0)) -> IsingHamiltonian:
    """Random couplings on a random subset of pairs and random fields, coefficients from `values`."""
    pairs = list(itertools.combinations(range(num_spins), 2))
    couplings = [(i, j, float(rng.choice(values))) for i, j in pairs if rng.random() < 0.6]
    fields = [(i, float(rng.choice(values))) for i in range(num_spins) if rng.random() < 0.4]
    return IsingHamiltonian(num_spins, tuple(couplings), tuple(fields))


def random_anticommuting_instance(
        rng: np.random.Generator, num_spins: int,
        values=(-1.0, 1.0)) -> Tuple[IsingHamiltonian, XStringObservable]:
    """
    Random model with a guaranteed anticommuting X-string: every coupling joins
    the string's site set to its complement, every field sits on the set.
    """
    while True:
        members = [q for q in range(num_spins) if rng.random() < 0.5]
        if members:
            break
    inside = set(members)
    couplings = [
        (i, j, float(rng.choice(values)))
        for i, j in itertools.combinations(range(num_spins), 2)
        if ((i in inside) != (j in inside)) and rng.random() < 0.7
    ]
    fields = [(i, float(rng.choice(values))) for i in sorted(inside) if rng.random() < 0.5]
    if not couplings and not fields:
        fields = [(members[0], 1.0)]
    return (IsingHamiltonian(num_spins, tuple(couplings), tuple(fields)),
            XStringObservable(frozenset(inside)))


def random_subset(rng: np.random.Generator, num_qubits: int) -> List[int]:
    while True:
        subset = [q for q in range(num_qubits) if rng.random() < 0.5]
        if subset:
            return subset


def nearest_distance(values, target: float) -> Optional[float]:
    values = list(values)
    if not values:
        return None
    return min(abs(v - target) for v in values)
