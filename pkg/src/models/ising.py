# src/models/ising.py
"""
Ising-type Hamiltonians H = sum J_ij Z_i Z_j + sum h_i Z_i (hbar = 1), X-string
observables, the anticommutation criterion and the exact enumeration oracles.

Each unordered pair is stored once with its full J_ij, so the 1/2 prefactor of
the symmetric double sum in the general Ising form is already absorbed.
Bit 0 of a basis label maps to spin s = +1, bit 1 to s = -1.
"""
import json
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from joblib import Parallel, delayed

from src.core.data_types import OracleRow, TransitionRow
from src.core.errors import AnticommutationError, HamiltonianError, ResourceCapError
from src.core.logger_setup import get_logger
from src.core.timeseries import TimeGrid, TimeSeries
from src.utils.utils import timing_decorator

DEFAULT_ENUMERATION_CAP = 28
DEFAULT_CHUNK_BITS = 20
ENERGY_TOLERANCE = 1e-9
WEIGHT_TOLERANCE = 1e-9
SYMMETRY_TOLERANCE = 1e-8
SERIES_CHUNK = 1 << 15

Coupling = Tuple[int, int, float]
Field = Tuple[int, float]


@dataclass(frozen=True)
class IsingHamiltonian:
    num_spins: int
    couplings: Tuple[Coupling, ...] = ()
    fields: Tuple[Field, ...] = ()

    def __post_init__(self):
        couplings = tuple((int(i), int(j), float(J)) for i, j, J in self.couplings)
        fields = tuple((int(i), float(h)) for i, h in self.fields)
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "fields", fields)
        self._validate()

    def _validate(self) -> None:
        if self.num_spins < 1:
            raise HamiltonianError(f"need at least one spin, got {self.num_spins}")
        pairs = set()
        for i, j, _ in self.couplings:
            self._check_site(i)
            self._check_site(j)
            if i == j:
                raise HamiltonianError(f"coupling ({i},{j}) couples a spin to itself")
            pair = frozenset((i, j))
            if pair in pairs:
                raise HamiltonianError(f"duplicate coupling between spins {i} and {j}")
            pairs.add(pair)
        sites = set()
        for i, _ in self.fields:
            self._check_site(i)
            if i in sites:
                raise HamiltonianError(f"duplicate field on spin {i}")
            sites.add(i)

    def _check_site(self, site: int) -> None:
        if not 0 <= site < self.num_spins:
            raise HamiltonianError(f"site {site} outside 0..{self.num_spins - 1}")

    @property
    def num_terms(self) -> int:
        return len(self.couplings) + len(self.fields)

    def to_dict(self) -> dict:
        return {
            "num_spins": self.num_spins,
            "couplings": [list(c) for c in self.couplings],
            "fields": [list(f) for f in self.fields],
        }

    def cache_key(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def describe(self) -> str:
        terms = [f"{J:+g} Z{i} Z{j}" for i, j, J in self.couplings]
        terms += [f"{h:+g} Z{i}" for i, h in self.fields]
        return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class XStringObservable:
    """Product of sigma^x over a non-empty set of sites."""
    qubits: FrozenSet[int]

    def __post_init__(self):
        qubits = frozenset(int(q) for q in self.qubits)
        if not qubits:
            raise HamiltonianError("an X-string needs at least one qubit")
        if min(qubits) < 0:
            raise HamiltonianError(f"negative qubit index in {sorted(qubits)}")
        object.__setattr__(self, "qubits", qubits)

    @property
    def sorted_qubits(self) -> List[int]:
        return sorted(self.qubits)

    @property
    def mask(self) -> int:
        return sum(1 << q for q in self.qubits)

    @property
    def label(self) -> str:
        return " ".join(f"X{q}" for q in self.sorted_qubits)

    def validate_for(self, hamiltonian: IsingHamiltonian) -> None:
        if max(self.qubits) >= hamiltonian.num_spins:
            raise HamiltonianError(
                f"observable {self.label} addresses a site outside "
                f"the {hamiltonian.num_spins}-spin model")


@dataclass(frozen=True, eq=False)
class EnergyHistogram:
    """Exact (energy, degeneracy) table, ascending in energy."""
    num_spins: int
    energies: np.ndarray
    degeneracies: np.ndarray

    @property
    def entries(self) -> List[Tuple[float, int]]:
        return [(float(e), int(d)) for e, d in zip(self.energies, self.degeneracies)]

    def weights(self) -> np.ndarray:
        return self.degeneracies / float(2 ** self.num_spins)

    def is_symmetric(self, tolerance: float = ENERGY_TOLERANCE) -> bool:
        """(E, d) present iff (-E, d) present."""
        if len(self.energies) == 0:
            return True
        mirrored = -self.energies[::-1]
        return bool(
            np.all(np.abs(mirrored - self.energies) <= tolerance)
            and np.array_equal(self.degeneracies, self.degeneracies[::-1])
        )

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def top_energy(self) -> float:
        return float(self.energies[-1])

    def to_rows(self) -> List[OracleRow]:
        return [
            OracleRow(energy=float(e), degeneracy=int(d), weight=float(w))
            for e, d, w in zip(self.energies, self.degeneracies, self.weights())
        ]


@dataclass(frozen=True, eq=False)
class TransitionHistogram:
    """
    Exact frequencies E(s xor S) - E(s) of the X-string series from |+...+>,
    with multiplicities, ascending in frequency.
    """
    num_spins: int
    frequencies: np.ndarray
    multiplicities: np.ndarray

    def weights(self) -> np.ndarray:
        return self.multiplicities / float(2 ** self.num_spins)

    def to_rows(self) -> List[TransitionRow]:
        return [
            TransitionRow(omega=float(f), multiplicity=int(m), weight=float(w))
            for f, m, w in zip(self.frequencies, self.multiplicities, self.weights())
        ]


def energy(hamiltonian: IsingHamiltonian, configuration: Union[str, Sequence[int]]) -> float:
    """
    Diagonal energy of one computational basis configuration.

    Args:
        hamiltonian: The model
        configuration: Bits of spins 0..n-1 in order, as a string ("010") or a sequence

    Raises:
        HamiltonianError: length differs from num_spins or a bit is not 0/1
    """
    bits = [int(b) for b in configuration]
    if len(bits) != hamiltonian.num_spins:
        raise HamiltonianError(
            f"configuration has {len(bits)} bits, model has {hamiltonian.num_spins} spins")
    if any(b not in (0, 1) for b in bits):
        raise HamiltonianError(f"configuration {configuration!r} is not a bitstring")
    spins = [1 - 2 * b for b in bits]
    total = 0.0
    for i, j, J in hamiltonian.couplings:
        total += J * spins[i] * spins[j]
    for i, h in hamiltonian.fields:
        total += h * spins[i]
    return total


def label_energies(hamiltonian: IsingHamiltonian, labels: np.ndarray) -> np.ndarray:
    """Vectorised energies of basis labels; each term costs one XOR of two bits."""
    labels = np.asarray(labels, dtype=np.int64)
    bits = {}

    def bit(site: int) -> np.ndarray:
        if site not in bits:
            bits[site] = ((labels >> site) & 1).astype(np.int8)
        return bits[site]

    energies = np.zeros(labels.shape, dtype=float)
    for i, j, J in hamiltonian.couplings:
        energies += J * (1 - 2 * (bit(i) ^ bit(j)))
    for i, h in hamiltonian.fields:
        energies += h * (1 - 2 * bit(i))
    return energies


def _chunk_histogram(hamiltonian: IsingHamiltonian, start: int, stop: int,
                     flip_mask: int) -> Tuple[np.ndarray, np.ndarray]:
    labels = np.arange(start, stop, dtype=np.int64)
    values = label_energies(hamiltonian, labels)
    if flip_mask:
        values = label_energies(hamiltonian, labels ^ flip_mask) - values
    return np.unique(values, return_counts=True)


def _merge_histograms(parts: Iterable[Tuple[np.ndarray, np.ndarray]],
                      tolerance: float) -> Tuple[np.ndarray, np.ndarray]:
    parts = list(parts)
    values = np.concatenate([p[0] for p in parts])
    counts = np.concatenate([p[1] for p in parts]).astype(np.int64)
    order = np.argsort(values, kind="stable")
    values, counts = values[order], counts[order]

    # a gap wider than the tolerance starts a new level
    starts = np.concatenate(([True], np.diff(values) > tolerance))
    group = np.cumsum(starts) - 1
    merged_counts = np.zeros(int(group[-1]) + 1, dtype=np.int64)
    np.add.at(merged_counts, group, counts)
    return values[starts], merged_counts


def _enumerate(hamiltonian: IsingHamiltonian, flip_mask: int, cap: int, tolerance: float,
               chunk_bits: int, n_jobs: int) -> Tuple[np.ndarray, np.ndarray]:
    n = hamiltonian.num_spins
    if n > cap:
        raise ResourceCapError(
            f"{n} spins exceed the enumeration cap of {cap} (2^{n} configurations)")

    total = 2 ** n
    chunk = 2 ** max(1, chunk_bits)
    ranges = [(start, min(start + chunk, total)) for start in range(0, total, chunk)]
    logger = get_logger()
    logger.debug(f"Enumerating {total} configurations in {len(ranges)} chunks (n_jobs={n_jobs})")

    if n_jobs == 1 or len(ranges) == 1:
        parts = [_chunk_histogram(hamiltonian, a, b, flip_mask) for a, b in ranges]
    else:
        parts = Parallel(n_jobs=n_jobs)(
            delayed(_chunk_histogram)(hamiltonian, a, b, flip_mask) for a, b in ranges)
    return _merge_histograms(parts, tolerance)


@timing_decorator
def spectrum(hamiltonian: IsingHamiltonian, cap: int = DEFAULT_ENUMERATION_CAP,
             tolerance: float = ENERGY_TOLERANCE, chunk_bits: int = DEFAULT_CHUNK_BITS,
             n_jobs: int = 1) -> EnergyHistogram:
    """
    Exact energy histogram by exhaustive enumeration of all 2^n configurations.

    Energies closer than `tolerance` are merged into one level. The result does not
    depend on the chunking or the number of workers.

    Raises:
        ResourceCapError: num_spins exceeds `cap`
    """
    energies, degeneracies = _enumerate(hamiltonian, 0, cap, tolerance, chunk_bits, n_jobs)
    get_logger().info(
        f"Spectrum of {hamiltonian.num_spins} spins: {len(energies)} distinct levels")
    return EnergyHistogram(hamiltonian.num_spins, energies, degeneracies)


@timing_decorator
def transition_spectrum(hamiltonian: IsingHamiltonian, observable: XStringObservable,
                        cap: int = DEFAULT_ENUMERATION_CAP,
                        tolerance: float = ENERGY_TOLERANCE,
                        chunk_bits: int = DEFAULT_CHUNK_BITS,
                        n_jobs: int = 1) -> TransitionHistogram:
    """
    Exact transition frequencies carried by <X_S(t)> from |+...+>.

    A(t) = 2^-n sum_s exp(i (E(s xor S) - E(s)) t); no anticommutation is required.
    When X_S anticommutes with H every frequency equals 2 E(s).
    """
    observable.validate_for(hamiltonian)
    frequencies, multiplicities = _enumerate(
        hamiltonian, observable.mask, cap, tolerance, chunk_bits, n_jobs)
    return TransitionHistogram(hamiltonian.num_spins, frequencies, multiplicities)


def anticommutation_violations(hamiltonian: IsingHamiltonian,
                               observable: XStringObservable) -> List[str]:
    """
    Terms of H that do not anticommute with the X-string.

    A ZZ term anticommutes iff exactly one of its sites is in the string; a Z term
    iff its site is. Terms with a zero coefficient are absent from H and skipped.
    """
    observable.validate_for(hamiltonian)
    qubits = observable.qubits
    violations = []
    for i, j, J in hamiltonian.couplings:
        if J == 0:
            continue
        shared = (i in qubits) + (j in qubits)
        if shared != 1:
            violations.append(f"J[{i},{j}]={J:g} Z{i} Z{j} ({shared} observable qubits)")
    for i, h in hamiltonian.fields:
        if h == 0:
            continue
        if i not in qubits:
            violations.append(f"h[{i}]={h:g} Z{i} (site not in observable)")
    return violations


def anticommutes(hamiltonian: IsingHamiltonian, observable: XStringObservable) -> bool:
    """True iff {A, H} = 0 for the X-string A."""
    return not anticommutation_violations(hamiltonian, observable)


def find_anticommuting_observable(hamiltonian: IsingHamiltonian) -> Optional[XStringObservable]:
    """
    Search for an X-string anticommuting with H.

    The string's site set must hold exactly one end of every coupling and every
    field site, i.e. one colour class of a two-colouring of the coupling graph.
    Returns None when the graph is not bipartite, when field sites fall on both
    colours of a component, or when H has no terms.
    """
    field_sites = {i for i, h in hamiltonian.fields if h != 0}
    graph = nx.Graph()
    graph.add_nodes_from(range(hamiltonian.num_spins))
    graph.add_edges_from((i, j) for i, j, J in hamiltonian.couplings if J != 0)
    if not nx.is_bipartite(graph):
        return None

    chosen = set()
    for component in sorted(nx.connected_components(graph), key=min):
        if len(component) == 1:
            chosen |= component & field_sites
            continue
        colouring = nx.bipartite.color(graph.subgraph(component))
        side = {v for v, c in colouring.items() if c == colouring[min(component)]}
        other = set(component) - side
        fields_here = field_sites & component
        if fields_here <= side:
            chosen |= side
        elif fields_here <= other:
            chosen |= other
        else:
            return None

    if not chosen:
        return None
    return XStringObservable(frozenset(chosen))


def _fold_symmetric(frequencies: np.ndarray, weights: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pair each omega with -omega: returns the non-negative frequencies and
    their combined weights, so that sum w e^{i omega t} = sum w' cos(omega' t).

    Raises:
        AnticommutationError: the table is not symmetric under omega -> -omega
    """
    order = np.argsort(frequencies, kind="stable")
    frequencies, weights = frequencies[order], weights[order]
    skew = float(np.max(np.abs(frequencies + frequencies[::-1]))) if len(frequencies) else 0.0
    imbalance = float(np.max(np.abs(weights - weights[::-1]))) if len(weights) else 0.0
    if skew > SYMMETRY_TOLERANCE or imbalance > WEIGHT_TOLERANCE:
        raise AnticommutationError(
            f"characteristic series is not real (|E + E'| up to {skew:.3g}, "
            f"weight mismatch {imbalance:.3g}); the spectrum is not symmetric under E -> -E")
    half = len(frequencies) // 2
    positive = frequencies[len(frequencies) - half:]
    folded = 2.0 * weights[len(weights) - half:]
    if len(frequencies) % 2:
        positive = np.concatenate(([0.0], positive))
        folded = np.concatenate((weights[half:half + 1], folded))
    return positive, folded


def _oscillation_sum(grid: TimeGrid, frequencies: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """
    sum_k w_k exp(i omega_k t_n) on the grid, O(levels) memory.

    The table is folded to cosines and cos(n theta) is advanced with the
    Chebyshev recurrence over blocks of SERIES_CHUNK levels; the series is
    even in t, so only n = 0..N is evaluated.
    """
    omegas, folded = _fold_symmetric(np.asarray(frequencies, dtype=float),
                                     np.asarray(weights, dtype=float))
    steps = grid.big_n
    half = np.zeros(steps + 1)
    for start in range(0, len(omegas), SERIES_CHUNK):
        w = folded[start:start + SERIES_CHUNK]
        current = np.cos(omegas[start:start + SERIES_CHUNK] * grid.tau)
        two_cos = 2.0 * current
        previous = np.ones_like(current)
        scratch = np.empty_like(current)
        half[0] += w.sum()
        if steps >= 1:
            half[1] += current @ w
        for n in range(2, steps + 1):
            # cos(n x) = 2 cos x cos((n-1) x) - cos((n-2) x), written over cos((n-2) x)
            np.multiply(two_cos, current, out=scratch)
            np.subtract(scratch, previous, out=previous)
            previous, current = current, previous
            half[n] += current @ w
    return np.concatenate((half[:0:-1], half))


def characteristic_series(hamiltonian: IsingHamiltonian, grid: TimeGrid,
                          histogram: Optional[EnergyHistogram] = None,
                          cap: int = DEFAULT_ENUMERATION_CAP) -> TimeSeries:
    """
    Exact A(t_n) = sum_E (d_E / 2^n) exp(2 i E t_n) for |+...+> and an anticommuting X-string.

    Raises:
        ResourceCapError: enumeration cap exceeded
        AnticommutationError: the spectrum is not symmetric, so the series is not real
    """
    if histogram is None:
        histogram = spectrum(hamiltonian, cap=cap)
    values = _oscillation_sum(grid, 2.0 * histogram.energies, histogram.weights())
    return TimeSeries(grid, values)


def transition_series(hamiltonian: IsingHamiltonian, observable: XStringObservable,
                      grid: TimeGrid, histogram: Optional[TransitionHistogram] = None,
                      cap: int = DEFAULT_ENUMERATION_CAP) -> TimeSeries:
    """Exact <X_S(t_n)> from |+...+> for any X-string, via the transition oracle."""
    if histogram is None:
        histogram = transition_spectrum(hamiltonian, observable, cap=cap)
    values = _oscillation_sum(grid, histogram.frequencies, histogram.weights())
    return TimeSeries(grid, values)
