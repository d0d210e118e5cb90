"""Command line front end.

Four subcommands cover the pipeline:

    qperm program --kind heap --n 7 [--branching 2] [-o prog.json]
    qperm build x.txt prog.json [--lambda-r F] [--lambda-c F]
                [--no-normalize] [-o qubo.json]
    qperm solve qubo.json [--trace] [--seed S] [--restarts K] [--max-steps M]
    qperm verify x.txt prog.json [--exhaustive] [--seed S] [--restarts K]

Input vectors are read either as a JSON array or as plain text with one
number per line.  Program files are JSON objects with keys "n", "kind",
"branching", and "ranks".  QUBO files are JSON objects with keys "n",
"lambda_r", "lambda_c", "normalized", "R" (row-major, full symmetric
matrix), and "r"; build also embeds "x" and "program" so that solve can
print the arranged values.

Trace lines follow a fixed format: the step index right-aligned in four
columns, two spaces, the state as '-'/'+' glyphs separated by single
spaces, two spaces, the energy with one decimal.  JSON files carry full
precision.

The default random seed is 0, overridden by the QP_SEED environment
variable, overridden in turn by --seed.

Exit codes: 0 success, 2 bad arguments or malformed input, 3 zero input
vector with normalization on, 4 no stable feasible state within the
restart budget, 5 failed certificate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

import numpy as np

from .builder import BuilderConfig, build_qubo
from .conversions import bipolar_to_binary, fold_diagonal, to_hopfield, to_ising
from .errors import (
    MaxStepsExceeded,
    NonSquareLength,
    NotAPermutation,
    QpermError,
    ZeroVector,
)
from .hopfield import SolverConfig, solve
from .model import (
    OrderProgram,
    QuboInstance,
    SolverTrace,
    ValueVector,
    apply_permutation,
    decode_permutation,
)
from .oracle import best_permutation, certify, exhaustive_qubo_min
from .programs import ascending_program, bst_program, descending_program, heap_program

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ZERO_VECTOR = 3
EXIT_INFEASIBLE = 4
EXIT_FAILED_CERTIFICATE = 5

MAX_VERIFY_N = 10
MAX_EXHAUSTIVE_N = 4


def render_trace(trace: SolverTrace) -> list[str]:
    """Render each trace row in the documented glyph format."""
    lines = []
    for step in trace.steps:
        glyphs = " ".join("+" if v > 0 else "-" for v in step.state)
        lines.append(f"{step.index:4d}  {glyphs}  {step.energy:.1f}")
    return lines


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ZeroVector as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_VECTOR
    except MaxStepsExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except QpermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qperm",
        description="Compile ordering tasks into QUBO form and solve them by Hopfield descent.",
    )
    sub = parser.add_subparsers(required=True, metavar="command")

    p_program = sub.add_parser("program", help="generate an order-program file")
    p_program.add_argument(
        "--kind", required=True, choices=("ascending", "descending", "bst", "heap")
    )
    p_program.add_argument("--n", required=True, type=int)
    p_program.add_argument("--branching", type=int, default=2)
    p_program.add_argument("-o", "--out", help="output path (default: stdout)")
    p_program.set_defaults(handler=_cmd_program)

    p_build = sub.add_parser("build", help="compile an input vector and a program into a QUBO")
    p_build.add_argument("x_file")
    p_build.add_argument("program_file")
    p_build.add_argument("--lambda-r", type=float, default=None, help="row penalty (default n)")
    p_build.add_argument("--lambda-c", type=float, default=None, help="column penalty (default n)")
    p_build.add_argument("--no-normalize", action="store_true")
    p_build.add_argument("-o", "--out", help="output path (default: stdout)")
    p_build.set_defaults(handler=_cmd_build)

    p_solve = sub.add_parser("solve", help="run the descent on a QUBO file")
    p_solve.add_argument("qubo_file")
    p_solve.add_argument("--trace", action="store_true", help="print one line per step")
    p_solve.add_argument("--seed", type=int, default=None)
    p_solve.add_argument("--restarts", type=int, default=0)
    p_solve.add_argument("--max-steps", type=int, default=None)
    p_solve.set_defaults(handler=_cmd_solve)

    p_verify = sub.add_parser("verify", help="end-to-end run plus brute-force certification")
    p_verify.add_argument("x_file")
    p_verify.add_argument("program_file")
    p_verify.add_argument(
        "--exhaustive",
        action="store_true",
        help=f"also enumerate all binary states (n <= {MAX_EXHAUSTIVE_N})",
    )
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--restarts", type=int, default=None, help="default n*n")
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def _cmd_program(args) -> int:
    n = args.n
    if args.kind == "ascending":
        program = ascending_program(n)
    elif args.kind == "descending":
        program = descending_program(n)
    elif args.kind == "bst":
        program = bst_program(n, args.branching)
    else:
        program = heap_program(n, args.branching)
    _write_text(json.dumps(_program_to_dict(program), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_build(args) -> int:
    x = ValueVector(_read_values(args.x_file))
    program = _read_program(args.program_file)
    n = program.n
    config = BuilderConfig(
        lambda_r=args.lambda_r if args.lambda_r is not None else float(n),
        lambda_c=args.lambda_c if args.lambda_c is not None else float(n),
        normalize=not args.no_normalize,
    )
    instance = build_qubo(x, program, config)
    payload = {
        "n": n,
        "lambda_r": instance.lambda_r,
        "lambda_c": instance.lambda_c,
        "normalized": config.normalize,
        "R": instance.matrix_R.tolist(),
        "r": instance.vector_r.tolist(),
        "x": x.entries.tolist(),
        "program": _program_to_dict(program, with_n=False),
    }
    _write_text(json.dumps(payload) + "\n", args.out)
    return EXIT_OK


def _cmd_solve(args) -> int:
    instance, x_values = _read_qubo(args.qubo_file)
    trace, state_z = _descend(
        instance,
        seed=_seed_value(args.seed),
        restarts=args.restarts,
        max_steps=args.max_steps,
        accept=_decodes_cleanly,
    )
    if args.trace:
        for line in render_trace(trace):
            print(line)
    try:
        p = decode_permutation(state_z)
    except (NotAPermutation, NonSquareLength):
        print("no feasible permutation within the restart budget", file=sys.stderr)
        return EXIT_INFEASIBLE
    print("permutation:", " ".join(str(c) for c in p.as_mapping))
    if x_values is not None:
        arranged = apply_permutation(p, ValueVector(x_values))
        print("values:", " ".join(_fmt(v) for v in arranged))
    print("flips:", trace.flips)
    print("energy:", repr(trace.final_energy))
    return EXIT_OK


def _cmd_verify(args) -> int:
    x = ValueVector(_read_values(args.x_file))
    program = _read_program(args.program_file)
    n = program.n
    if n > MAX_VERIFY_N:
        print(f"error: verify enumerates all orderings; n <= {MAX_VERIFY_N}", file=sys.stderr)
        return EXIT_USAGE
    if args.exhaustive and n > MAX_EXHAUSTIVE_N:
        print(f"error: --exhaustive enumerates 2^(n*n) states; n <= {MAX_EXHAUSTIVE_N}",
              file=sys.stderr)
        return EXIT_USAGE

    instance = build_qubo(x, program)
    oracle_p, best_value = best_permutation(x, program)
    ranks = np.asarray(program.ranks, dtype=float)

    def accept(z: np.ndarray) -> bool:
        try:
            p = decode_permutation(z)
        except (NotAPermutation, NonSquareLength):
            return False
        achieved = -float(apply_permutation(p, x) @ ranks)
        return abs(achieved - best_value) <= 1e-9 * max(1.0, abs(best_value))

    restarts = args.restarts if args.restarts is not None else n * n
    _, state_z = _descend(
        instance,
        seed=_seed_value(args.seed),
        restarts=restarts,
        max_steps=None,
        accept=accept,
    )
    report = certify(x, program, None, state_z)

    checks: list[tuple[str, Optional[bool]]] = [
        ("feasible permutation", report.feasible),
        ("objective vs oracle", report.optimal),
        (f"structure ({program.kind})", report.structure_valid),
    ]
    if args.exhaustive:
        z_min, _ = exhaustive_qubo_min(fold_diagonal(instance))
        try:
            p_min = decode_permutation(z_min)
            achieved = -float(apply_permutation(p_min, x) @ ranks)
            agreement = abs(achieved - best_value) <= 1e-9 * max(1.0, abs(best_value))
        except (NotAPermutation, NonSquareLength):
            agreement = False
        checks.append(("exhaustive agreement", agreement))

    failed = False
    for label, outcome in checks:
        if outcome is None:
            print(f"{label:<24} SKIP")
            continue
        print(f"{label:<24} {'PASS' if outcome else 'FAIL'}")
        failed = failed or not outcome
    for note in report.notes:
        print(f"note: {note}")
    return EXIT_FAILED_CERTIFICATE if failed else EXIT_OK


def _descend(instance, seed, restarts, max_steps, accept):
    """Fold, convert, and run the network; returns (trace, binary state)."""
    network = to_hopfield(to_ising(fold_diagonal(instance)))
    config = SolverConfig(max_steps=max_steps, restarts=restarts, seed=seed)
    state, trace = solve(
        network, config, feasibility_check=lambda s: accept(bipolar_to_binary(s))
    )
    return trace, bipolar_to_binary(state)


def _decodes_cleanly(z: np.ndarray) -> bool:
    try:
        decode_permutation(z)
        return True
    except (NotAPermutation, NonSquareLength):
        return False


def _seed_value(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get("QP_SEED", "")
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise QpermError(f"QP_SEED must be an integer, got {raw!r}") from None


def _read_values(path: str) -> np.ndarray:
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [float(line) for line in text.splitlines() if line.strip()]
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise QpermError(f"{path}: expected a flat non-empty vector")
    return arr


def _read_program(path: str) -> OrderProgram:
    data = json.loads(_read_text(path))
    for key in ("n", "kind", "branching", "ranks"):
        if key not in data:
            raise QpermError(f"{path}: missing key {key!r}")
    program = OrderProgram(
        ranks=tuple(data["ranks"]), kind=data["kind"], branching=data["branching"]
    )
    if program.n != int(data["n"]):
        raise QpermError(f"{path}: n={data['n']} does not match {program.n} ranks")
    return program


def _read_qubo(path: str) -> tuple[QuboInstance, Optional[np.ndarray]]:
    data = json.loads(_read_text(path))
    for key in ("n", "lambda_r", "lambda_c", "normalized", "R", "r"):
        if key not in data:
            raise QpermError(f"{path}: missing key {key!r}")
    instance = QuboInstance(
        matrix_R=np.asarray(data["R"], dtype=float),
        vector_r=np.asarray(data["r"], dtype=float),
        lambda_r=data["lambda_r"],
        lambda_c=data["lambda_c"],
        source_n=int(data["n"]),
    )
    x_values = np.asarray(data["x"], dtype=float) if "x" in data else None
    return instance, x_values


def _program_to_dict(program: OrderProgram, with_n: bool = True) -> dict:
    payload = {
        "kind": program.kind,
        "branching": program.branching,
        "ranks": list(program.ranks),
    }
    if with_n:
        payload = {"n": program.n, **payload}
    return payload


def _write_text(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _fmt(value: float) -> str:
    return f"{value:g}"
