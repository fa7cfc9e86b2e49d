"""Text serialization of path circuits.

Grammar (whitespace, including newlines, is insignificant; ``#`` starts a
comment that runs to the end of the line)::

    circuit := "QLS-CIRCUIT" "1" layout stage*
    layout  := "LAYOUT" "{" "n" "=" INT "," "m" "=" INT "}"
    stage   := "SWITCH" "{" "level" "=" INT "," "kind" "=" KIND "}"
             | "BRANCH" "{" "level" "=" INT "," "on" ":" block "," "off" ":" block "}"
             | "WRITE"  "{" "target" "=" ("INDEX" | "VALUE") "," "pattern" "=" INT "," "cond" "=" cond "}"
             | "PHASE"  "{" "pairs" "=" "[" [pair ("," pair)*] "]" "," "cond" "=" cond "}"
             | "HIDX"   "{" "qubit" "=" INT "}"
    block   := "[" stage* "]"
    pair    := "(" INT "," INT ")"
    cond    := "-" | INT ":" ("ON" | "OFF")
    KIND    := "SPLIT" | "MERGE_MINUS" | "MERGE_MINUS_ADJ"

Field order is fixed.  The serializer indents branch blocks by two spaces
per level and writes one stage per line.
"""

from __future__ import annotations

import re

from .circuit import (
    BranchStage,
    IndexHadamardStage,
    PathCircuit,
    PhaseStage,
    Stage,
    SwitchStage,
    WriteStage,
)
from .gates import Branch, Condition, PairSet, Register, SwitchKind
from .registers import make_layout

MAGIC = "QLS-CIRCUIT"
VERSION = 1

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+|\#[^\n]*)|(?P<nl>\n)|(?P<int>\d+)|(?P<word>[A-Za-z_][A-Za-z0-9_\-]*)|(?P<punct>[{}\[\](),=:\-])"
)
_STAGE_TAGS = ("SWITCH", "BRANCH", "WRITE", "PHASE", "HIDX")


class CircuitParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _cond_text(cond: Condition | None) -> str:
    if cond is None:
        return "-"
    return f"{cond.level}:{cond.branch.name}"


def _emit(stages, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    for st in stages:
        if isinstance(st, SwitchStage):
            out.append(f"{pad}SWITCH{{level={st.level},kind={st.kind.value}}}")
        elif isinstance(st, WriteStage):
            out.append(
                f"{pad}WRITE{{target={st.target.value},pattern={st.pattern},cond={_cond_text(st.cond)}}}"
            )
        elif isinstance(st, PhaseStage):
            pairs = ",".join(f"({i},{v})" for i, v in st.pairs)
            out.append(f"{pad}PHASE{{pairs=[{pairs}],cond={_cond_text(st.cond)}}}")
        elif isinstance(st, IndexHadamardStage):
            out.append(f"{pad}HIDX{{qubit={st.qubit}}}")
        else:
            out.append(f"{pad}BRANCH{{level={st.level},on:[")
            _emit(st.on_block, depth + 1, out)
            out.append(f"{pad}],off:[")
            _emit(st.off_block, depth + 1, out)
            out.append(f"{pad}]}}")


def serialize(circuit: PathCircuit) -> str:
    lay = circuit.layout
    out = [f"{MAGIC} {VERSION}", f"LAYOUT{{n={lay.n},m={lay.m}}}"]
    _emit(circuit.stages, 0, out)
    return "\n".join(out) + "\n"


class _Parser:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, str, int, int]] = []
        line, line_start = 1, 0
        pos = 0
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if mt is None:
                raise CircuitParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
            kind = mt.lastgroup
            if kind == "nl":
                line, line_start = line + 1, mt.end()
            elif kind != "ws":
                self.tokens.append((kind, mt.group(), line, pos - line_start + 1))
            pos = mt.end()
        self.end = (line, pos - line_start + 1)
        self.i = 0

    def _peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "<end of input>", *self.end)

    def _fail(self, message: str, tok=None):
        tok = tok or self._peek()
        raise CircuitParseError(message, tok[2], tok[3])

    def _next(self):
        tok = self._peek()
        if tok[0] == "eof":
            self._fail("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, text: str):
        tok = self._next()
        if tok[1] != text:
            self._fail(f"expected {text!r}, found {tok[1]!r}", tok)
        return tok

    def integer(self) -> int:
        tok = self._next()
        if tok[0] != "int":
            self._fail(f"expected an integer, found {tok[1]!r}", tok)
        return int(tok[1])

    def word(self, choices) -> str:
        tok = self._next()
        if tok[1] not in choices:
            self._fail(f"expected one of {', '.join(choices)}, found {tok[1]!r}", tok)
        return tok[1]

    def field(self, name: str, sep: str = "=") -> None:
        self.expect(name)
        self.expect(sep)

    def cond(self) -> Condition | None:
        if self._peek()[1] == "-":
            self._next()
            return None
        level = self.integer()
        self.expect(":")
        return Condition(level, Branch[self.word(("ON", "OFF"))])

    def stage(self) -> Stage:
        tok = self._next()
        tag = tok[1]
        if tag not in _STAGE_TAGS:
            self._fail(f"unknown stage tag {tag!r}", tok)
        self.expect("{")
        if tag == "SWITCH":
            self.field("level")
            level = self.integer()
            self.expect(",")
            self.field("kind")
            st: Stage = SwitchStage(level, SwitchKind(self.word([k.value for k in SwitchKind])))
        elif tag == "WRITE":
            self.field("target")
            target = Register(self.word(("INDEX", "VALUE")))
            self.expect(",")
            self.field("pattern")
            pattern = self.integer()
            self.expect(",")
            self.field("cond")
            st = WriteStage(target, pattern, self.cond())
        elif tag == "PHASE":
            self.field("pairs")
            self.expect("[")
            pairs = []
            while self._peek()[1] != "]":
                if pairs:
                    self.expect(",")
                self.expect("(")
                i = self.integer()
                self.expect(",")
                v = self.integer()
                self.expect(")")
                pairs.append((i, v))
            self.expect("]")
            self.expect(",")
            self.field("cond")
            try:
                pset = PairSet(pairs)
            except ValueError as exc:
                self._fail(str(exc), tok)
            st = PhaseStage(pset, self.cond())
        elif tag == "HIDX":
            self.field("qubit")
            st = IndexHadamardStage(self.integer())
        else:
            self.field("level")
            level = self.integer()
            self.expect(",")
            self.field("on", ":")
            on = self.block()
            self.expect(",")
            self.field("off", ":")
            st = BranchStage(level, on, self.block())
        self.expect("}")
        return st

    def block(self) -> list[Stage]:
        self.expect("[")
        stages = []
        while self._peek()[1] != "]":
            stages.append(self.stage())
        self.expect("]")
        return stages

    def circuit(self) -> PathCircuit:
        self.expect(MAGIC)
        tok = self._peek()
        if self.integer() != VERSION:
            self._fail(f"unsupported format version {tok[1]}", tok)
        self.expect("LAYOUT")
        self.expect("{")
        self.field("n")
        n = self.integer()
        self.expect(",")
        self.field("m")
        m = self.integer()
        self.expect("}")
        try:
            layout = make_layout(n, m)
        except ValueError as exc:
            self._fail(str(exc))
        stages = []
        while self._peek()[0] != "eof":
            stages.append(self.stage())
        try:
            return PathCircuit(layout, stages)
        except ValueError as exc:
            raise CircuitParseError(f"invalid circuit: {exc}", *self.end) from exc


def parse(text: str) -> PathCircuit:
    """Inverse of :func:`serialize`; raises :class:`CircuitParseError`."""
    return _Parser(text).circuit()
