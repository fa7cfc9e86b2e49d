"""Path-circuit representation, simulation, adjoint and cost accounting.

A circuit is an ordered list of stages.  :class:`BranchStage` is the path
construct: its ``on_block`` runs on the part of the state whose ancilla
``level`` is On and its ``off_block`` on the Off part.  The two blocks act
on orthogonal subspaces, so simulating them one after the other with an
extra ancilla condition gives the same result as running them at once;
only :func:`depth_report` models the simultaneity.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Union

from . import gates
from .gates import Branch, CondMask, Condition, PairSet, Register, SwitchKind
from .registers import RegisterLayout
from .state import SparseState


@dataclass(frozen=True, slots=True)
class SwitchStage:
    level: int
    kind: SwitchKind

    tag = "SWITCH"


@dataclass(frozen=True, slots=True)
class WriteStage:
    target: Register
    pattern: int
    cond: Condition | None = None

    tag = "WRITE"


@dataclass(frozen=True, slots=True)
class PhaseStage:
    pairs: PairSet
    cond: Condition | None = None

    tag = "PHASE"


@dataclass(frozen=True, slots=True)
class IndexHadamardStage:
    qubit: int

    tag = "HIDX"


@dataclass(frozen=True, slots=True)
class BranchStage:
    level: int
    on_block: tuple[Stage, ...]
    off_block: tuple[Stage, ...]

    tag = "BRANCH"

    def __post_init__(self) -> None:
        object.__setattr__(self, "on_block", tuple(self.on_block))
        object.__setattr__(self, "off_block", tuple(self.off_block))


Stage = Union[SwitchStage, WriteStage, PhaseStage, IndexHadamardStage, BranchStage]


def _validate(stages: Sequence[Stage], layout: RegisterLayout, ceiling: int) -> None:
    # ceiling: ancilla levels must stay strictly below this inside a branch
    for st in stages:
        if isinstance(st, SwitchStage):
            _check_level(st.level, ceiling, st)
        elif isinstance(st, WriteStage):
            gates.check_pattern(layout, st.target, st.pattern)
            if st.cond is not None:
                _check_level(st.cond.level, ceiling, st)
        elif isinstance(st, PhaseStage):
            st.pairs.check(layout)
            if st.cond is not None:
                _check_level(st.cond.level, ceiling, st)
        elif isinstance(st, IndexHadamardStage):
            layout.index_bit(st.qubit)
        elif isinstance(st, BranchStage):
            _check_level(st.level, ceiling, st)
            _validate(st.on_block, layout, st.level)
            _validate(st.off_block, layout, st.level)
        else:
            raise TypeError(f"not a stage: {st!r}")


def _check_level(level: int, ceiling: int, st: Stage) -> None:
    if not 0 <= level < ceiling:
        raise ValueError(f"{st.tag} stage uses ancilla level {level}, allowed [0, {ceiling})")


@dataclass(frozen=True, slots=True)
class PathCircuit:
    layout: RegisterLayout
    stages: tuple[Stage, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "stages", tuple(self.stages))
        _validate(self.stages, self.layout, self.layout.L)

    def __len__(self) -> int:
        return len(self.stages)

    def without(self, path: Sequence[int | str]) -> PathCircuit:
        """Copy with the stage at ``path`` removed.

        A path alternates stage positions and ``"on"``/``"off"`` block
        selectors, e.g. ``(1, "on", 3)`` is the fourth stage of the on-block
        of the second top-level stage.
        """
        return PathCircuit(self.layout, _drop(self.stages, list(path)))


def _drop(stages: tuple[Stage, ...], path: list) -> tuple[Stage, ...]:
    pos = path[0]
    if len(path) == 1:
        return stages[:pos] + stages[pos + 1:]
    br = stages[pos]
    if not isinstance(br, BranchStage):
        raise ValueError(f"path descends into non-branch stage {br.tag}")
    side, rest = path[1], path[2:]
    if side == "on":
        br = BranchStage(br.level, _drop(br.on_block, rest), br.off_block)
    elif side == "off":
        br = BranchStage(br.level, br.on_block, _drop(br.off_block, rest))
    else:
        raise ValueError(f"block selector must be 'on' or 'off', got {side!r}")
    return stages[:pos] + (br,) + stages[pos + 1:]


def _with_cond(layout: RegisterLayout, cm: CondMask, cond: Condition | None) -> CondMask:
    if cond is None:
        return cm
    bit = layout.ancilla_bit(cond.level)
    want = cm[1] | bit if cond.branch else cm[1] & ~bit
    if cm[0] & bit and (cm[1] & bit) != (want & bit):
        raise ValueError(f"stage condition contradicts enclosing branch on level {cond.level}")
    return cm[0] | bit, want


def _run(stages, layout: RegisterLayout, amps: dict[int, complex], cm: CondMask, observer=None):
    for pos, st in enumerate(stages):
        if isinstance(st, SwitchStage):
            amps = gates._apply_switch(amps, layout, st.level, st.kind, cm)
        elif isinstance(st, WriteStage):
            amps = gates._apply_xor(amps, layout, st.target, st.pattern, _with_cond(layout, cm, st.cond))
        elif isinstance(st, PhaseStage):
            amps = gates._apply_phase(amps, layout, st.pairs, _with_cond(layout, cm, st.cond))
        elif isinstance(st, IndexHadamardStage):
            amps = gates._apply_hadamard(amps, layout, st.qubit, cm)
        else:
            on_cm = _with_cond(layout, cm, Condition(st.level, Branch.ON))
            off_cm = _with_cond(layout, cm, Condition(st.level, Branch.OFF))
            amps = _run(st.on_block, layout, amps, on_cm)
            amps = _run(st.off_block, layout, amps, off_cm)
        if observer is not None:
            observer(f"{pos}:{st.tag}", SparseState._trusted(layout, dict(amps)))
    return amps


def simulate(
    circuit: PathCircuit,
    state: SparseState,
    trace: Callable[[str, SparseState], None] | None = None,
) -> SparseState:
    """Apply ``circuit`` to ``state``.

    ``trace``, if given, is called after every top-level stage with a label
    ``"<position>:<TAG>"`` and a snapshot of the state.
    """
    if state.layout != circuit.layout:
        raise ValueError(f"layout mismatch: circuit {circuit.layout} vs state {state.layout}")
    amps = _run(circuit.stages, circuit.layout, dict(state.amps), gates.NO_COND, trace)
    return SparseState._trusted(circuit.layout, amps)


def trace_states(circuit: PathCircuit, state: SparseState) -> list[tuple[str, SparseState]]:
    out: list[tuple[str, SparseState]] = []
    simulate(circuit, state, lambda label, s: out.append((label, s)))
    return out


def _adjoint(stages: Sequence[Stage]) -> tuple[Stage, ...]:
    out = []
    for st in reversed(stages):
        if isinstance(st, SwitchStage):
            out.append(SwitchStage(st.level, st.kind.adjoint))
        elif isinstance(st, BranchStage):
            out.append(BranchStage(st.level, _adjoint(st.on_block), _adjoint(st.off_block)))
        else:
            out.append(st)  # writers, phase flips and Hadamards are self-adjoint
    return tuple(out)


def dagger(circuit: PathCircuit) -> PathCircuit:
    return PathCircuit(circuit.layout, _adjoint(circuit.stages))


class DepthReport(NamedTuple):
    parallel_depth: int
    gate_count: int


def _cost(stages: Sequence[Stage]) -> tuple[int, int]:
    depth = gates_n = 0
    prev_write: WriteStage | None = None
    for st in stages:
        if isinstance(st, BranchStage):
            d_on, g_on = _cost(st.on_block)
            d_off, g_off = _cost(st.off_block)
            # the branch step costs one unit even when both blocks are empty
            depth += max(d_on, d_off, 1)
            gates_n += g_on + g_off
            prev_write = None
        elif isinstance(st, WriteStage):
            # adjacent writers on the same path are one simultaneous flip
            if prev_write is None or prev_write.cond != st.cond:
                depth += 1
            gates_n += 1
            prev_write = st
        else:
            depth += 1
            gates_n += 1
            prev_write = None
    return depth, gates_n


def depth_report(circuit: PathCircuit) -> DepthReport:
    """Parallel depth (both branch paths at once) and total gate count."""
    return DepthReport(*_cost(circuit.stages))
