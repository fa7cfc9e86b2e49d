"""Register layout and basis-label packing.

A basis label is packed into a single integer with the ancilla bits most
significant, then the index field, then the value field::

    packed = ancilla << (n + m) | index << m | value

Ancilla bit ``l`` (counting from the least significant ancilla bit) is the
Off/On state of path level ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

MAX_QUBITS = 64  # packed labels stay within an unsigned 64-bit word


@dataclass(frozen=True, slots=True)
class RegisterLayout:
    """Index register of ``n`` qubits, value register of ``m`` qubits and
    ``L`` ancilla path levels."""

    n: int
    m: int
    L: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"index qubit count must be >= 0, got {self.n}")
        if self.m < 1:
            raise ValueError(f"value qubit count must be >= 1, got {self.m}")
        if self.L != max(self.n, 1):
            raise ValueError(f"ancilla level count must be max(n, 1)={max(self.n, 1)}, got {self.L}")
        if self.total_qubits > MAX_QUBITS:
            raise ValueError(
                f"layout needs {self.total_qubits} qubits, cap is {MAX_QUBITS}"
            )

    @property
    def total_qubits(self) -> int:
        return self.n + self.m + self.L

    @property
    def dimension(self) -> int:
        return 1 << self.total_qubits

    @property
    def num_indices(self) -> int:
        return 1 << self.n

    @property
    def num_values(self) -> int:
        return 1 << self.m

    @property
    def ancilla_shift(self) -> int:
        return self.n + self.m

    def ancilla_bit(self, level: int) -> int:
        """Mask of the packed-integer bit holding ancilla ``level``."""
        if not 0 <= level < self.L:
            raise ValueError(f"ancilla level {level} out of range [0, {self.L})")
        return 1 << (self.ancilla_shift + level)

    def index_bit(self, qubit: int) -> int:
        if not 0 <= qubit < self.n:
            raise ValueError(f"index qubit {qubit} out of range [0, {self.n})")
        return 1 << (self.m + qubit)

    @property
    def ancilla_mask(self) -> int:
        return ((1 << self.L) - 1) << self.ancilla_shift


def make_layout(n: int, m: int) -> RegisterLayout:
    """Layout for a ``2**n``-component vector with ``m``-bit values."""
    return RegisterLayout(n, m, max(n, 1))


class BasisState(NamedTuple):
    index: int
    value: int
    ancilla: int = 0  # bit l is level l; 0 = Off, 1 = On


def pack(layout: RegisterLayout, basis: BasisState) -> int:
    index, value, ancilla = basis
    if not 0 <= index < layout.num_indices:
        raise ValueError(f"index {index} out of range [0, {layout.num_indices})")
    if not 0 <= value < layout.num_values:
        raise ValueError(f"value {value} out of range [0, {layout.num_values})")
    if not 0 <= ancilla < (1 << layout.L):
        raise ValueError(f"ancilla bits {ancilla:#b} out of range for {layout.L} levels")
    return (ancilla << layout.ancilla_shift) | (index << layout.m) | value


def unpack(layout: RegisterLayout, packed: int) -> BasisState:
    if not 0 <= packed < layout.dimension:
        raise ValueError(f"packed label {packed} out of range [0, {layout.dimension})")
    return BasisState(
        (packed >> layout.m) & (layout.num_indices - 1),
        packed & (layout.num_values - 1),
        packed >> layout.ancilla_shift,
    )


def ancilla_string(layout: RegisterLayout, ancilla: int) -> str:
    """Ancilla bits as text, level ``L-1`` first."""
    return format(ancilla, f"0{layout.L}b")
