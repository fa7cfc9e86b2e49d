"""Brute-force and statistical checks on circuits and loaded states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import PathCircuit, simulate
from .registers import BasisState, ancilla_string, pack, unpack
from .state import SparseState, inner_product

DENSE_MAX_QUBITS = 12


def dense_unitary(circuit: PathCircuit) -> np.ndarray:
    """Materialize the circuit as a ``2**q x 2**q`` matrix, one simulated
    basis state per column."""
    lay = circuit.layout
    if lay.total_qubits > DENSE_MAX_QUBITS:
        raise ValueError(
            f"dense materialization needs {lay.total_qubits} qubits, cap is {DENSE_MAX_QUBITS}"
        )
    dim = lay.dimension
    mat = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        out = simulate(circuit, SparseState._trusted(lay, {col: 1 + 0j}))
        for row, amp in out.amps.items():
            mat[row, col] = amp
    return mat


def unitarity_residual(matrix: np.ndarray) -> float:
    """Largest entry of ``|U^dagger U - I|``."""
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


def dense_vector(state: SparseState) -> np.ndarray:
    vec = np.zeros(state.layout.dimension, dtype=complex)
    for key, amp in state.amps.items():
        vec[key] = amp
    return vec


def fidelity(state: SparseState, target: SparseState) -> float:
    """``|<target|state>|``."""
    return abs(inner_product(target, state))


def ancilla_off_probability(state: SparseState) -> float:
    anc = state.layout.ancilla_mask
    return math.fsum(abs(a) ** 2 for k, a in state.amps.items() if not k & anc)


@dataclass
class SampleHistogram:
    shots: int
    seed: int
    counts: dict[BasisState, int] = field(default_factory=dict)

    def index_marginal(self, num_indices: int) -> np.ndarray:
        out = np.zeros(num_indices, dtype=np.int64)
        for basis, c in self.counts.items():
            out[basis.index] += c
        return out

    def format_records(self, layout) -> str:
        lines = ["index,value,ancilla,count"]
        for basis in sorted(self.counts, key=lambda b: pack(layout, b)):
            lines.append(f"{basis.index},{basis.value},{ancilla_string(layout, basis.ancilla)},{self.counts[basis]}")
        return "\n".join(lines) + "\n"


def sample(state: SparseState, seed: int, shots: int) -> SampleHistogram:
    """Draw ``shots`` i.i.d. outcomes with probabilities ``|amp|**2``.

    Uses numpy's PCG64 generator (``default_rng(seed)``) over the support in
    ascending packed order, so a fixed seed gives a fixed histogram.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    keys = sorted(state.amps)
    probs = np.array([abs(state.amps[k]) ** 2 for k in keys])
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, probs)
    counts = {unpack(state.layout, k): int(c) for k, c in zip(keys, draws) if c}
    return SampleHistogram(shots, seed, counts)


def classical_load_steps(N: int) -> int:
    """Unit operations for loading ``N`` components one at a time."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return N
