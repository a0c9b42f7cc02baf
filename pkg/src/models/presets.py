# src/models/presets.py
"""
Named scenarios: spin in a field, three-spin chain, isotropic and frustrated
squares, and the six-spin lattice.

The six-spin lattice uses contiguous labels 0..5 for device qubits
{0, 1, 2, 12, 13, 14} (12 -> 3, 13 -> 4, 14 -> 5).
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from src.core.errors import ConfigError
from src.models.ising import IsingHamiltonian, XStringObservable


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    hamiltonian: IsingHamiltonian
    observable: XStringObservable
    tau: float
    big_n: int
    # level set asserted for the scenario in its published figure
    claimed_levels: Tuple[float, ...] = ()


def _square(j01: float) -> IsingHamiltonian:
    return IsingHamiltonian(4, couplings=((0, 1, j01), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)))


PRESETS: Dict[str, Preset] = {
    preset.name: preset for preset in (
        Preset(
            name="spin_field",
            description="single spin in a field, H = w0 Z0 (w0 = 1), A = X0",
            hamiltonian=IsingHamiltonian(1, fields=((0, 1.0),)),
            observable=XStringObservable(frozenset({0})),
            tau=np.pi / 12, big_n=96,
            claimed_levels=(-1.0, 1.0),
        ),
        Preset(
            name="chain3",
            description="open chain J (Z0 Z1 + Z1 Z2), J = 1, A = X1",
            hamiltonian=IsingHamiltonian(3, couplings=((0, 1, 1.0), (1, 2, 1.0))),
            observable=XStringObservable(frozenset({1})),
            tau=np.pi / 12, big_n=96,
            claimed_levels=(-2.0, 0.0, 2.0),
        ),
        Preset(
            name="square4_iso",
            description="isotropic square plaquette, all J = 1, A = X0 X2",
            hamiltonian=_square(1.0),
            observable=XStringObservable(frozenset({0, 2})),
            tau=np.pi / 12, big_n=96,
            claimed_levels=(-4.0, 0.0, 4.0),
        ),
        Preset(
            name="square4_aniso",
            description="frustrated square plaquette, J01 = -1, others 1, A = X0 X2",
            hamiltonian=_square(-1.0),
            observable=XStringObservable(frozenset({0, 2})),
            tau=np.pi / 12, big_n=96,
            claimed_levels=(-2.0, 2.0),
        ),
        Preset(
            name="lattice6",
            description="six-spin lattice with seven J = 1 bonds, A = X0 X2 X4",
            hamiltonian=IsingHamiltonian(6, couplings=(
                (0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (4, 3, 1.0),
                (4, 5, 1.0), (1, 4, 1.0), (0, 5, 1.0),
            )),
            observable=XStringObservable(frozenset({0, 2, 4})),
            tau=np.pi / 24, big_n=192,
            claimed_levels=(-7.0, -3.0, 0.0, 3.0, 7.0),
        ),
    )
}


def preset_names() -> List[str]:
    return list(PRESETS)


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset '{name}'; available: {', '.join(PRESETS)}") from None
