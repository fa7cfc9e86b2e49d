import pytest
from hypothesis import given, strategies as st

from qls.registers import BasisState, MAX_QUBITS, RegisterLayout, ancilla_string, make_layout, pack, unpack


@pytest.mark.parametrize(
    "n, m, L, total",
    [(1, 4, 1, 6), (2, 2, 2, 6), (0, 3, 1, 4)],
)
def test_make_layout(n, m, L, total):
    lay = make_layout(n, m)
    assert lay.L == L
    assert lay.total_qubits == total
    assert lay.dimension == 2**n * 2**m * 2**L


def test_layout_rejects_bad_sizes():
    with pytest.raises(ValueError, match="value qubit"):
        make_layout(1, 0)
    with pytest.raises(ValueError, match="index qubit"):
        make_layout(-1, 2)
    with pytest.raises(ValueError, match="cap"):
        make_layout(30, 10)
    with pytest.raises(ValueError, match="ancilla level"):
        RegisterLayout(2, 2, 1)


def test_cap_allows_24_qubits():
    assert MAX_QUBITS >= 24
    assert make_layout(10, 4).total_qubits == 24


def test_pack_convention():
    lay = make_layout(1, 2)
    assert pack(lay, BasisState(1, 3, 0)) == 7
    assert pack(lay, BasisState(0, 0, 1)) == 8
    assert unpack(lay, 0) == BasisState(0, 0, 0)


def test_pack_range_errors():
    lay = make_layout(1, 2)
    for bad in [BasisState(2, 0, 0), BasisState(0, 4, 0), BasisState(0, 0, 2)]:
        with pytest.raises(ValueError):
            pack(lay, bad)
    with pytest.raises(ValueError):
        unpack(lay, lay.dimension)


@pytest.mark.parametrize("n, m", [(0, 1), (1, 2), (2, 3), (3, 3), (4, 4)])
def test_pack_unpack_bijection_exhaustive(n, m):
    lay = make_layout(n, m)
    assert lay.total_qubits <= 12
    seen = set()
    for x in range(lay.dimension):
        b = unpack(lay, x)
        assert pack(lay, b) == x
        seen.add(b)
    assert len(seen) == lay.dimension


@given(st.integers(0, 8), st.integers(1, 8), st.data())
def test_unpack_pack_roundtrip(n, m, data):
    lay = make_layout(n, m)
    b = BasisState(
        data.draw(st.integers(0, 2**n - 1)),
        data.draw(st.integers(0, 2**m - 1)),
        data.draw(st.integers(0, 2**lay.L - 1)),
    )
    assert unpack(lay, pack(lay, b)) == b


def test_ancilla_string_top_level_first():
    lay = make_layout(3, 1)
    assert ancilla_string(lay, 0b001) == "001"
    assert ancilla_string(lay, 0b100) == "100"
