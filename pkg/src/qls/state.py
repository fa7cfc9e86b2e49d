"""Sparse complex state vectors over a :class:`RegisterLayout`."""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence

from .registers import BasisState, RegisterLayout, ancilla_string, pack, unpack

PRUNE_EPS = 1e-15
STATE_ATOL = 1e-12

RECORD_HEADER = "index,value,ancilla,re,im"


class SparseState:
    """Map from packed basis label to complex amplitude.

    Entries with magnitude below ``PRUNE_EPS`` are never stored, so exact
    interference cancellations leave no trace.  Instances are treated as
    values: gate functions return new states.
    """

    __slots__ = ("layout", "amps")

    def __init__(self, layout: RegisterLayout, amps: Mapping[int, complex] | None = None):
        self.layout = layout
        self.amps: dict[int, complex] = {}
        if amps:
            dim = layout.dimension
            for key, amp in amps.items():
                amp = complex(amp)
                if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                    raise ValueError(f"non-finite amplitude {amp!r} at label {key}")
                if not 0 <= key < dim:
                    raise ValueError(f"packed label {key} out of range [0, {dim})")
                if abs(amp) >= PRUNE_EPS:
                    self.amps[key] = amp

    @classmethod
    def _trusted(cls, layout: RegisterLayout, amps: dict[int, complex]) -> SparseState:
        # skips validation; callers guarantee pruned, in-range, finite entries
        obj = cls.__new__(cls)
        obj.layout = layout
        obj.amps = amps
        return obj

    @classmethod
    def from_basis(
        cls, layout: RegisterLayout, entries: Mapping[BasisState, complex] | Iterable[tuple[BasisState, complex]]
    ) -> SparseState:
        items = entries.items() if isinstance(entries, Mapping) else entries
        amps: dict[int, complex] = {}
        for basis, amp in items:
            key = pack(layout, BasisState(*basis))
            amps[key] = amps.get(key, 0j) + complex(amp)
        return cls(layout, amps)

    def __len__(self) -> int:
        return len(self.amps)

    def __iter__(self) -> Iterator[tuple[BasisState, complex]]:
        for key in sorted(self.amps):
            yield unpack(self.layout, key), self.amps[key]

    def __repr__(self) -> str:
        body = ", ".join(f"{tuple(b)}: {a:.6g}" for b, a in self)
        return f"SparseState(n={self.layout.n}, m={self.layout.m}, {{{body}}})"

    def amplitude(self, basis: BasisState | tuple[int, int, int]) -> complex:
        return self.amps.get(pack(self.layout, BasisState(*basis)), 0j)

    def scaled(self, factor: complex) -> SparseState:
        return SparseState(self.layout, {k: a * factor for k, a in self.amps.items()})

    def __add__(self, other: SparseState) -> SparseState:
        _check_layout(self, other)
        amps = dict(self.amps)
        for k, a in other.amps.items():
            amps[k] = amps.get(k, 0j) + a
        return SparseState(self.layout, amps)

    def allclose(self, other: SparseState, atol: float = STATE_ATOL) -> bool:
        """Entrywise equality within ``atol`` over the union of supports."""
        _check_layout(self, other)
        keys = self.amps.keys() | other.amps.keys()
        return all(abs(self.amps.get(k, 0j) - other.amps.get(k, 0j)) <= atol for k in keys)

    def max_abs_diff(self, other: SparseState) -> float:
        _check_layout(self, other)
        keys = self.amps.keys() | other.amps.keys()
        return max((abs(self.amps.get(k, 0j) - other.amps.get(k, 0j)) for k in keys), default=0.0)


def _check_layout(s1: SparseState, s2: SparseState) -> None:
    if s1.layout != s2.layout:
        raise ValueError(f"layout mismatch: {s1.layout} vs {s2.layout}")


def initial_state(layout: RegisterLayout) -> SparseState:
    """All registers zero, every ancilla Off."""
    return SparseState._trusted(layout, {0: 1 + 0j})


def uniform_index_state(layout: RegisterLayout) -> SparseState:
    amp = complex(math.sqrt(1 / layout.num_indices))
    return SparseState._trusted(layout, {i << layout.m: amp for i in range(layout.num_indices)})


def target_state(layout: RegisterLayout, values: Sequence[int]) -> SparseState:
    """The loaded state: equal-weight sum of ``|i>|values[i]>`` with ancillas Off."""
    if len(values) != layout.num_indices:
        raise ValueError(f"expected {layout.num_indices} values, got {len(values)}")
    amp = complex(math.sqrt(1 / layout.num_indices))
    amps = {pack(layout, BasisState(i, v, 0)): amp for i, v in enumerate(values)}
    return SparseState._trusted(layout, amps)


def inner_product(s1: SparseState, s2: SparseState) -> complex:
    """<s1|s2>, conjugate-linear in ``s1``."""
    _check_layout(s1, s2)
    if len(s1.amps) > len(s2.amps):
        return sum((a.conjugate() * s1.amps[k] for k, a in s2.amps.items() if k in s1.amps), 0j).conjugate()
    return sum((a.conjugate() * s2.amps[k] for k, a in s1.amps.items() if k in s2.amps), 0j)


def norm(s: SparseState) -> float:
    return math.sqrt(math.fsum(abs(a) ** 2 for a in s.amps.values()))


def prune(s: SparseState, eps: float = PRUNE_EPS) -> SparseState:
    return SparseState._trusted(s.layout, {k: a for k, a in s.amps.items() if abs(a) >= eps})


def format_records(s: SparseState, header: bool = True) -> str:
    """One line per entry in ascending packed order.

    ``re``/``im`` use the shortest repr that round-trips the double exactly;
    negative zero is written as ``0.0``.
    """
    lines = [RECORD_HEADER] if header else []
    for basis, amp in s:
        lines.append(
            f"{basis.index},{basis.value},{ancilla_string(s.layout, basis.ancilla)},"
            f"{amp.real + 0.0!r},{amp.imag + 0.0!r}"
        )
    return "\n".join(lines) + "\n"


def parse_records(layout: RegisterLayout, text: str) -> SparseState:
    amps: dict[BasisState, complex] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line == RECORD_HEADER:
            continue
        index, value, anc, re, im = line.split(",")
        amps[BasisState(int(index), int(value), int(anc, 2))] = complex(float(re), float(im))
    return SparseState.from_basis(layout, amps)
