"""Intermediate states of the two- and four-component loaders, written out
term by term as (index, value, ancilla-bits) -> amplitude."""

from __future__ import annotations

from math import sqrt

from qls.registers import make_layout
from qls.state import SparseState

OFF, ON = 0, 1
# four-component loader: top level is ancilla bit 1, inner level bit 0
OFF5, ON5 = 0b00, 0b10


def n2_states(a0: int, a1: int, m: int) -> list[SparseState]:
    lay = make_layout(1, m)
    r = 1 / sqrt(2)
    terms = [
        # S1: split the path
        {(0, 0, ON): r, (0, 0, OFF): r},
        # I0 A0 on On, I1 A1 on Off
        {(0, a0, ON): r, (1, a1, OFF): r},
        # S2: sum on Off, difference on On
        {(0, a0, OFF): 0.5, (1, a1, OFF): 0.5, (0, a0, ON): 0.5, (1, a1, ON): -0.5},
        # B repairs the On sign
        {(0, a0, OFF): 0.5, (1, a1, OFF): 0.5, (0, a0, ON): 0.5, (1, a1, ON): 0.5},
        # S3 interferes everything back onto Off
        {(0, a0, OFF): r, (1, a1, OFF): r},
    ]
    return [SparseState.from_basis(lay, t) for t in terms]


def n4_states(a: list[int], m: int) -> list[SparseState]:
    lay = make_layout(2, m)
    r = 1 / sqrt(2)
    c = 0.5 * r
    terms = [
        {(0, 0, ON5): r, (0, 0, OFF5): r},
        {(0, a[0], ON5): 0.5, (1, a[1], ON5): 0.5, (2, a[2], OFF5): 0.5, (3, a[3], OFF5): 0.5},
        {
            (0, a[0], OFF5): c, (1, a[1], OFF5): c, (2, a[2], OFF5): c, (3, a[3], OFF5): c,
            (0, a[0], ON5): c, (1, a[1], ON5): c, (2, a[2], ON5): -c, (3, a[3], ON5): -c,
        },
        {
            (0, a[0], OFF5): c, (1, a[1], OFF5): c, (2, a[2], OFF5): c, (3, a[3], OFF5): c,
            (0, a[0], ON5): c, (1, a[1], ON5): c, (2, a[2], ON5): c, (3, a[3], ON5): c,
        },
        {(i, a[i], 0): 0.5 for i in range(4)},
    ]
    return [SparseState.from_basis(lay, t) for t in terms]
