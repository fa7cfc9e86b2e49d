"""Builders for the path-interference loading circuits.

The base block loads two components with one ancilla level::

    SPLIT -> BRANCH(on: write i, a_i | off: write i+1, a_{i+1})
          -> MERGE_MINUS -> PHASE{(i+1, a_{i+1})} on On -> SPLIT

A block of size ``2**k`` wraps two blocks of size ``2**(k-1)`` the same way,
using ancilla level ``k-1`` and flipping the sign of every (i, a_i) pair of
the upper half on the On path.  Each block returns its ancillas to Off, so
one physical ancilla per recursion level suffices.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .circuit import BranchStage, IndexHadamardStage, PathCircuit, PhaseStage, Stage, SwitchStage, WriteStage
from .gates import Branch, Condition, PairSet, Register, SwitchKind
from .registers import make_layout


@dataclass(frozen=True)
class VectorSpec:
    """Value patterns padded to a power-of-two length."""

    logical_length: int
    values: tuple[int, ...]
    m: int
    padding_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        size = len(self.values)
        if size == 0 or size & (size - 1):
            raise ValueError(f"padded length must be a power of two, got {size}")
        if self.m < 1:
            raise ValueError(f"value qubit count must be >= 1, got {self.m}")
        if not 1 <= self.logical_length <= size or self.padding_count != size - self.logical_length:
            raise ValueError("inconsistent logical length / padding count")
        if self.logical_length > 1 and 2 * self.logical_length <= size:
            raise ValueError(f"{size} is not the smallest power of two >= {self.logical_length}")
        if any(not 0 <= v < (1 << self.m) for v in self.values):
            raise ValueError(f"values must lie in [0, {1 << self.m})")
        if any(self.values[self.logical_length:]):
            raise ValueError("padding entries must be zero")
        make_layout(self.n, self.m)  # raises past the qubit cap

    @property
    def n(self) -> int:
        return len(self.values).bit_length() - 1

    @property
    def layout(self):
        return make_layout(self.n, self.m)


def pad_to_pow2(values: Sequence[int], m: int) -> VectorSpec:
    """Append zero components up to the next power of two."""
    values = [int(v) for v in values]
    if not values:
        raise ValueError("cannot load an empty vector")
    for i, v in enumerate(values):
        if not 0 <= v < (1 << m):
            raise ValueError(f"component {i} = {v} does not fit in {m} value qubits")
    size = 1 << (len(values) - 1).bit_length()
    return VectorSpec(len(values), tuple(values) + (0,) * (size - len(values)), m, size - len(values))


class Quantized(NamedTuple):
    values: list[int]
    clamped: int


def _round_half_away(x: float) -> int:
    ax = abs(x)
    r = math.floor(ax)
    if ax - r >= 0.5:
        r += 1
    return -r if x < 0 else r


def quantize(reals: Sequence[float], m: int, scale: float, offset: float = 0.0) -> Quantized:
    """Fixed-point encoding ``clamp(round((a - offset) / scale), 0, 2**m - 1)``.

    Ties round away from zero.  ``clamped`` counts entries pushed back into
    range.
    """
    if not scale > 0 or not math.isfinite(scale):
        raise ValueError(f"scale must be positive and finite, got {scale}")
    if m < 1:
        raise ValueError(f"value qubit count must be >= 1, got {m}")
    if not math.isfinite(offset):
        raise ValueError(f"offset must be finite, got {offset}")
    top = (1 << m) - 1
    out, clamped = [], 0
    for a in reals:
        a = float(a)
        if not math.isfinite(a):
            raise ValueError(f"non-finite component {a}")
        q = _round_half_away((a - offset) / scale)
        if q < 0 or q > top:
            clamped += 1
            q = min(max(q, 0), top)
        out.append(q)
    return Quantized(out, clamped)


@lru_cache(maxsize=None)
def _switch(level: int, kind: SwitchKind) -> SwitchStage:
    return SwitchStage(level, kind)


def _writes(index: int, value: int) -> list[Stage]:
    # zero patterns are identities and are not emitted
    out: list[Stage] = []
    if index:
        out.append(WriteStage(Register.INDEX, index))
    if value:
        out.append(WriteStage(Register.VALUE, value))
    return out


class _Tables(NamedTuple):
    indices: np.ndarray
    values: np.ndarray


def _tables(spec: VectorSpec) -> _Tables:
    return _Tables(np.arange(len(spec.values), dtype=np.int64), np.asarray(spec.values, dtype=np.int64))


def _block(spec: VectorSpec, tables: _Tables, start: int, k: int) -> list[Stage]:
    level = k - 1
    half = 1 << level
    if k == 1:
        on = _writes(start, spec.values[start])
        off = _writes(start + 1, spec.values[start + 1])
    else:
        on = _block(spec, tables, start, k - 1)
        off = _block(spec, tables, start + half, k - 1)
    upper = slice(start + half, start + 2 * half)
    return [
        _switch(level, SwitchKind.SPLIT),
        BranchStage(level, on, off),
        _switch(level, SwitchKind.MERGE_MINUS),
        PhaseStage(PairSet._contiguous(tables.indices[upper], tables.values[upper]), Condition(level, Branch.ON)),
        _switch(level, SwitchKind.SPLIT),
    ]


def build_block(spec: VectorSpec, start: int, k: int, level: int | None = None) -> list[Stage]:
    """Stages loading components ``start .. start + 2**k - 1`` on ancilla
    levels ``0 .. k-1``.

    Expects index and value registers at zero and those ancillas Off on the
    path where the fragment runs.
    """
    if k < 1:
        raise ValueError(f"block size exponent must be >= 1, got {k}")
    if level is not None and level != k - 1:
        raise ValueError(f"a block of size 2**{k} uses ancilla level {k - 1}, not {level}")
    if start < 0 or start % (1 << k) or start + (1 << k) > len(spec.values):
        raise ValueError(f"block [{start}, {start + (1 << k)}) is not an aligned range of the vector")
    return _block(spec, _tables(spec), start, k)


def build_loader(spec: VectorSpec) -> PathCircuit:
    """Circuit taking ``|0>|0>|Off..>`` to the equal-weight ``sum_i |i>|a_i>``."""
    if spec.n == 0:
        return PathCircuit(spec.layout, [WriteStage(Register.VALUE, spec.values[0])])
    return PathCircuit(spec.layout, build_block(spec, 0, spec.n))


def build_uL(spec: VectorSpec) -> PathCircuit:
    """Circuit taking the uniform index superposition ``sum_i |i>|0>`` to
    ``sum_i |i>|a_i>``: undo the index Hadamards, then run the loader."""
    loader = build_loader(spec)
    undo = [IndexHadamardStage(q) for q in range(spec.n)]
    return PathCircuit(spec.layout, undo + list(loader.stages))
