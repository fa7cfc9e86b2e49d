"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 I/O or parse failure,
3 validation failure.

Vector files are JSON objects::

    {"m": 4, "encoding": "uint", "values": [5, 9, 3]}
    {"m": 3, "encoding": "fixed", "scale": 0.25, "offset": -1.0, "values": [0.1, -0.4]}
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import circuit as circ
from .loader import VectorSpec, build_loader, build_uL, pad_to_pow2, quantize
from .state import format_records, initial_state, target_state, uniform_index_state
from .textformat import serialize
from .verify import (
    DENSE_MAX_QUBITS,
    ancilla_off_probability,
    classical_load_steps,
    dense_unitary,
    fidelity,
    sample,
    unitarity_residual,
)

EXIT_OK, EXIT_VERIFY, EXIT_IO, EXIT_INVALID = 0, 1, 2, 3
FIDELITY_MIN = 1 - 1e-10
RESIDUAL_MAX = 1e-10
BENCH_HEADER = ("N", "parallel_depth", "gate_count", "classical_steps")


class InputError(Exception):
    """Unreadable or malformed input (exit 2)."""


class ValidationError(Exception):
    """Well-formed input with invalid content (exit 3)."""


@dataclass
class VectorFile:
    m: int
    encoding: str
    values: list
    scale: float | None = None
    offset: float | None = None


def read_vector_file(path: str) -> VectorFile:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    for key in ("m", "encoding", "values"):
        if key not in data:
            raise InputError(f"{path}: missing field {key!r}")
    unknown = set(data) - {"m", "encoding", "values", "scale", "offset"}
    if unknown:
        raise InputError(f"{path}: unknown field(s) {', '.join(sorted(unknown))}")
    m, encoding, values = data["m"], data["encoding"], data["values"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise InputError(f"{path}: 'm' must be an integer")
    if not isinstance(values, list):
        raise InputError(f"{path}: 'values' must be a list")
    if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in values):
        raise InputError(f"{path}: 'values' must hold numbers")
    for key in ("scale", "offset"):
        if key in data and (isinstance(data[key], bool) or not isinstance(data[key], (int, float))):
            raise InputError(f"{path}: {key!r} must be a number")
    return VectorFile(m, encoding, values, data.get("scale"), data.get("offset"))


def to_spec(vf: VectorFile) -> VectorSpec:
    if vf.m < 1:
        raise ValidationError(f"m must be >= 1, got {vf.m}")
    if not vf.values:
        raise ValidationError("values must be non-empty")
    if vf.encoding == "uint":
        if vf.scale is not None or vf.offset is not None:
            raise ValidationError("scale/offset are only allowed with encoding 'fixed'")
        if any(not isinstance(v, int) for v in vf.values):
            raise ValidationError("uint encoding needs integer values")
        patterns = vf.values
    elif vf.encoding == "fixed":
        if vf.scale is None or vf.offset is None:
            raise ValidationError("encoding 'fixed' requires scale and offset")
        try:
            patterns, clamped = quantize(vf.values, vf.m, vf.scale, vf.offset)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        if clamped:
            print(f"warning: {clamped} component(s) clamped to [0, {(1 << vf.m) - 1}]", file=sys.stderr)
    else:
        raise ValidationError(f"unknown encoding {vf.encoding!r} (expected 'uint' or 'fixed')")
    try:
        spec = pad_to_pow2(patterns, vf.m)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    return spec


def _load(path: str) -> VectorSpec:
    return to_spec(read_vector_file(path))


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def format_trace(spec: VectorSpec, loader: circ.PathCircuit) -> str:
    lines = ["step,stage,index,value,ancilla,re,im"]
    for step, (label, st) in enumerate(circ.trace_states(loader, initial_state(spec.layout)), 1):
        for rec in format_records(st, header=False).splitlines():
            lines.append(f"{step},{label},{rec}")
    return "\n".join(lines) + "\n"


def cmd_run(args) -> int:
    spec = _load(args.input)
    loader = build_loader(spec)
    final = circ.simulate(loader, initial_state(spec.layout))
    text = format_records(final)
    if args.shots is not None:
        if args.shots < 1:
            raise ValidationError(f"--shots must be >= 1, got {args.shots}")
        hist = sample(final, args.seed, args.shots)
        text += f"\n# histogram shots={hist.shots} seed={hist.seed}\n" + hist.format_records(spec.layout)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if args.trace:
        _write(args.trace, format_trace(spec, loader))
    return EXIT_OK


def cmd_build(args) -> int:
    spec = _load(args.input)
    text = serialize(build_uL(spec) if args.ul else build_loader(spec))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _load(args.input)
    lay = spec.layout
    loader = build_loader(spec)
    target = target_state(lay, spec.values)
    final = circ.simulate(loader, initial_state(lay))
    ok = True

    fid = fidelity(final, target)
    ok &= fid >= FIDELITY_MIN
    print(f"fidelity {fid:.12f}")
    p_off = ancilla_off_probability(final)
    ok &= p_off >= FIDELITY_MIN
    print(f"ancilla_off_probability {p_off:.12f}")
    report = circ.depth_report(loader)
    print(f"parallel_depth {report.parallel_depth}")
    print(f"gate_count {report.gate_count}")

    if args.dense:
        if lay.total_qubits > DENSE_MAX_QUBITS:
            print("unitarity_residual skipped (cap)")
        else:
            res = unitarity_residual(dense_unitary(loader))
            ok &= res <= RESIDUAL_MAX
            print(f"unitarity_residual {res:.3e}")
    if args.ul:
        ul = build_uL(spec)
        ul_fid = fidelity(circ.simulate(ul, uniform_index_state(lay)), target)
        ok &= ul_fid >= FIDELITY_MIN
        print(f"ul_fidelity {ul_fid:.12f}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY


def bench_rows(max_exp: int) -> list[tuple[int, int, int, int]]:
    """Costs of the loader for N = 2 .. 2**max_exp.

    Uses the all-ones vector with one value qubit, so every writer except
    the index-0 one is emitted.
    """
    rows = []
    for k in range(1, max_exp + 1):
        N = 1 << k
        rep = circ.depth_report(build_loader(pad_to_pow2([1] * N, 1)))
        rows.append((N, rep.parallel_depth, rep.gate_count, classical_load_steps(N)))
    return rows


def cmd_bench(args) -> int:
    if not 1 <= args.max_exp <= 20:
        raise ValidationError(f"--max-exp must be in [1, 20], got {args.max_exp}")
    sep = "," if args.format == "csv" else "\t"
    print(sep.join(BENCH_HEADER))
    for row in bench_rows(args.max_exp):
        print(sep.join(map(str, row)), flush=True)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qls", description="Path-interference vector loader.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate the loader and write the final state")
    p.add_argument("--input", required=True, help="vector file (JSON)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--trace", metavar="FILE", help="also write the state after every top-level stage")
    p.add_argument("--shots", type=int, help="append a measurement histogram with this many shots")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default: 0)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("build", help="write the loader circuit in text form")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.add_argument("--ul", action="store_true", help="build the loader for a uniform index input")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check fidelity, ancilla restoration and unitarity")
    p.add_argument("--input", required=True)
    p.add_argument("--dense", action="store_true", help=f"dense unitarity check (<= {DENSE_MAX_QUBITS} qubits)")
    p.add_argument("--ul", action="store_true", help="also check the uniform-input loader")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="depth and gate-count table for N = 2 .. 2**K")
    p.add_argument("--max-exp", type=int, required=True, metavar="K")
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
