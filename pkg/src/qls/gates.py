"""Primitive unitaries of the path-interference loader.

Every gate acts on a :class:`SparseState` and may be restricted to the
entries whose ancilla bits match a set of (level, branch) conditions.  The
``_apply_*`` kernels work directly on amplitude dicts with a precomputed
``(mask, want)`` condition so the circuit simulator can stack branch
conditions without rebuilding objects.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .registers import RegisterLayout
from .state import PRUNE_EPS, SparseState

_R = math.sqrt(0.5)


class SwitchKind(enum.Enum):
    """2x2 rotations on one ancilla level, rows/columns ordered (Off, On)."""

    SPLIT = "SPLIT"  # Off -> (Off+On)/r2, On -> (Off-On)/r2
    MERGE_MINUS = "MERGE_MINUS"  # Off -> (Off-On)/r2, On -> (Off+On)/r2
    MERGE_MINUS_ADJ = "MERGE_MINUS_ADJ"  # Off -> (Off+On)/r2, On -> (On-Off)/r2

    @property
    def matrix(self) -> np.ndarray:
        return _SWITCH_MATRICES[self]

    @property
    def adjoint(self) -> SwitchKind:
        return _SWITCH_ADJOINT[self]


_SWITCH_MATRICES = {
    SwitchKind.SPLIT: np.array([[_R, _R], [_R, -_R]]),
    SwitchKind.MERGE_MINUS: np.array([[_R, _R], [-_R, _R]]),
    SwitchKind.MERGE_MINUS_ADJ: np.array([[_R, -_R], [_R, _R]]),
}
_SWITCH_ADJOINT = {
    SwitchKind.SPLIT: SwitchKind.SPLIT,
    SwitchKind.MERGE_MINUS: SwitchKind.MERGE_MINUS_ADJ,
    SwitchKind.MERGE_MINUS_ADJ: SwitchKind.MERGE_MINUS,
}


class Branch(enum.IntEnum):
    OFF = 0
    ON = 1


class Register(enum.Enum):
    INDEX = "INDEX"
    VALUE = "VALUE"


@dataclass(frozen=True, slots=True)
class Condition:
    """Restricts a gate to entries whose ancilla ``level`` is in ``branch``."""

    level: int
    branch: Branch

    def __post_init__(self) -> None:
        object.__setattr__(self, "branch", Branch(self.branch))
        if self.level < 0:
            raise ValueError(f"condition level must be >= 0, got {self.level}")


class PairSet:
    """Immutable set of distinct (index, value) pairs.

    Stored as two integer arrays so that the loader can hand out views into
    one shared index/value table instead of materializing tuples per block.
    """

    __slots__ = ("indices", "values", "__dict__")

    def __init__(self, indices, values=None):
        if values is None:
            pairs = list(indices)
            idx = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=len(pairs))
            val = np.fromiter((p[1] for p in pairs), dtype=np.int64, count=len(pairs))
        else:
            idx = np.asarray(indices, dtype=np.int64)
            val = np.asarray(values, dtype=np.int64)
        if idx.shape != val.shape or idx.ndim != 1:
            raise ValueError("indices and values must be equal-length 1-d sequences")
        if idx.size and (idx.min() < 0 or val.min() < 0):
            raise ValueError("pair fields must be non-negative")
        if idx.size > 1 and np.unique(np.stack([idx, val], axis=1), axis=0).shape[0] != idx.size:
            raise ValueError("pairs must be distinct")
        self.indices = idx
        self.values = val

    @classmethod
    def _contiguous(cls, indices: np.ndarray, values: np.ndarray) -> PairSet:
        # strictly increasing indices, so distinctness holds without checking
        obj = cls.__new__(cls)
        obj.indices = indices
        obj.values = values
        return obj

    @cached_property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(self.indices.tolist(), self.values.tolist()))

    def keys(self, m: int) -> frozenset[int]:
        """Pairs packed as ``index << m | value``."""
        cache = self.__dict__.setdefault("_keys", {})
        if m not in cache:
            cache[m] = frozenset(((self.indices << m) | self.values).tolist())
        return cache[m]

    def check(self, layout: RegisterLayout) -> None:
        if self.indices.size and (
            self.indices.max() >= layout.num_indices or self.values.max() >= layout.num_values
        ):
            raise ValueError(f"pair out of range for layout n={layout.n}, m={layout.m}")

    def __len__(self) -> int:
        return int(self.indices.size)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairSet):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"PairSet({sorted(self.pairs)})"


# condition encoding used by the kernels: entry matches iff key & mask == want
CondMask = tuple[int, int]
NO_COND: CondMask = (0, 0)


def cond_mask(layout: RegisterLayout, conds: Iterable[Condition]) -> CondMask:
    mask = want = 0
    for c in conds:
        bit = layout.ancilla_bit(c.level)
        if mask & bit and (want & bit) != (bit if c.branch else 0):
            raise ValueError(f"contradictory conditions on level {c.level}")
        mask |= bit
        if c.branch:
            want |= bit
    return mask, want


def _accumulate(out: dict[int, complex], key: int, amp: complex) -> None:
    out[key] = out.get(key, 0j) + amp


def _pruned(amps: dict[int, complex]) -> dict[int, complex]:
    return {k: a for k, a in amps.items() if abs(a) >= PRUNE_EPS}


def _apply_two_level(
    amps: dict[int, complex], bit: int, matrix: np.ndarray, cm: CondMask
) -> dict[int, complex]:
    (u00, u01), (u10, u11) = matrix.tolist()
    mask, want = cm
    out: dict[int, complex] = {}
    for key, a in amps.items():
        if key & mask != want:
            _accumulate(out, key, a)
        elif key & bit:
            _accumulate(out, key ^ bit, u01 * a)
            _accumulate(out, key, u11 * a)
        else:
            _accumulate(out, key, u00 * a)
            _accumulate(out, key | bit, u10 * a)
    return _pruned(out)


def _apply_switch(
    amps: dict[int, complex], layout: RegisterLayout, level: int, kind: SwitchKind, cm: CondMask
) -> dict[int, complex]:
    return _apply_two_level(amps, layout.ancilla_bit(level), kind.matrix, cm)


def _apply_xor(
    amps: dict[int, complex], layout: RegisterLayout, target: Register, pattern: int, cm: CondMask
) -> dict[int, complex]:
    if pattern == 0:
        return amps
    flip = pattern << layout.m if target is Register.INDEX else pattern
    mask, want = cm
    return {(k ^ flip if k & mask == want else k): a for k, a in amps.items()}


def _apply_phase(
    amps: dict[int, complex], layout: RegisterLayout, pairs: PairSet, cm: CondMask
) -> dict[int, complex]:
    if not len(pairs):
        return amps
    keys = pairs.keys(layout.m)
    low = (1 << (layout.n + layout.m)) - 1
    mask, want = cm
    return {k: (-a if k & mask == want and (k & low) in keys else a) for k, a in amps.items()}


_HADAMARD = _SWITCH_MATRICES[SwitchKind.SPLIT]


def _apply_hadamard(
    amps: dict[int, complex], layout: RegisterLayout, qubit: int, cm: CondMask
) -> dict[int, complex]:
    return _apply_two_level(amps, layout.index_bit(qubit), _HADAMARD, cm)


def _single(layout: RegisterLayout, cond: Condition | None) -> CondMask:
    return cond_mask(layout, [cond]) if cond is not None else NO_COND


def check_pattern(layout: RegisterLayout, target: Register, pattern: int) -> None:
    limit = layout.num_indices if target is Register.INDEX else layout.num_values
    if not 0 <= pattern < limit:
        raise ValueError(f"{target.value} pattern {pattern} out of range [0, {limit})")


def apply_switch(
    state: SparseState, level: int, kind: SwitchKind, cond: Condition | None = None
) -> SparseState:
    lay = state.layout
    return SparseState._trusted(lay, _apply_switch(state.amps, lay, level, SwitchKind(kind), _single(lay, cond)))


def apply_xor_write(
    state: SparseState, target: Register, pattern: int, cond: Condition | None = None
) -> SparseState:
    """XOR ``pattern`` into the index or value field of matching entries."""
    lay = state.layout
    target = Register(target)
    check_pattern(lay, target, pattern)
    return SparseState._trusted(lay, dict(_apply_xor(state.amps, lay, target, pattern, _single(lay, cond))))


def apply_phase_flip(
    state: SparseState, pairs: PairSet | Iterable[tuple[int, int]], cond: Condition | None = None
) -> SparseState:
    """Negate the amplitude of matching entries whose (index, value) is in ``pairs``."""
    lay = state.layout
    if not isinstance(pairs, PairSet):
        pairs = PairSet(pairs)
    pairs.check(lay)
    return SparseState._trusted(lay, dict(_apply_phase(state.amps, lay, pairs, _single(lay, cond))))


def apply_index_hadamard(
    state: SparseState, index_qubit: int, cond: Condition | None = None
) -> SparseState:
    lay = state.layout
    return SparseState._trusted(lay, _apply_hadamard(state.amps, lay, index_qubit, _single(lay, cond)))
