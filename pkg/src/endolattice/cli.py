"""Command-line surface: problem files in, JSON reports and DOT diagrams out.

Problem file format, one directive per line:

    5                 element count
    0 1 3 4 2         images of 0..n-1
    order: 0 2        optional base-order pair (x <= y), repeatable
    name: 0 p         optional display label, repeatable

Exit codes: 0 success / lattice exists, 1 no lattice exists, 2 malformed
input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .funcgraph import FunctionTable, components, is_prohibited
from .lattice import (
    LatticeResult,
    NoLatticeError,
    VerificationError,
    construct,
    construct_paper_literal,
    construct_with_base,
    decide,
)
from .oracle import MAX_N, oracle_decide, sweep_compare
from .order import PartialOrder, certify, check_partial_order, hasse_covers, transitive_closure

SCHEMA = 1


class ProblemFormatError(ValueError):
    """Malformed problem file; the message names the offending line."""


@dataclass(frozen=True)
class ProblemFile:
    n: int
    images: tuple[int, ...]
    base_pairs: tuple[tuple[int, int], ...]
    names: dict[int, str]

    @property
    def table(self) -> FunctionTable:
        return FunctionTable(self.images)


def parse_problem(text: str) -> ProblemFile:
    lines = [(no, raw.strip()) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, s) for no, s in lines if s and not s.startswith("#")]
    if len(lines) < 2:
        raise ProblemFormatError("problem file needs an element count line and an image line")
    no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ProblemFormatError(f"line {no}: element count must be an integer, got {head!r}")
    if n < 1:
        raise ProblemFormatError(f"line {no}: element count must be positive, got {n}")
    no, body = lines[1]
    parts = body.split()
    if len(parts) != n:
        raise ProblemFormatError(f"line {no}: expected {n} images, got {len(parts)}")
    images = []
    for part in parts:
        try:
            v = int(part)
        except ValueError:
            raise ProblemFormatError(f"line {no}: image {part!r} is not an integer")
        if not 0 <= v < n:
            raise ProblemFormatError(f"line {no}: image {v} is out of range for n = {n}")
        images.append(v)
    base_pairs: list[tuple[int, int]] = []
    names: dict[int, str] = {}
    for no, line in lines[2:]:
        if line.startswith("order:"):
            parts = line[len("order:"):].split()
            if len(parts) != 2:
                raise ProblemFormatError(f"line {no}: order directive needs two elements")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ProblemFormatError(f"line {no}: order pair must be integers")
            if not (0 <= a < n and 0 <= b < n):
                raise ProblemFormatError(f"line {no}: order pair ({a}, {b}) out of range")
            base_pairs.append((a, b))
        elif line.startswith("name:"):
            parts = line[len("name:"):].split(maxsplit=1)
            if len(parts) != 2:
                raise ProblemFormatError(f"line {no}: name directive needs an index and a label")
            try:
                idx = int(parts[0])
            except ValueError:
                raise ProblemFormatError(f"line {no}: name index must be an integer")
            if not 0 <= idx < n:
                raise ProblemFormatError(f"line {no}: name index {idx} out of range")
            label = parts[1].strip()
            if label in names.values():
                raise ProblemFormatError(f"line {no}: duplicate name {label!r}")
            names[idx] = label
        else:
            raise ProblemFormatError(f"line {no}: unrecognised directive {line!r}")
    return ProblemFile(n, tuple(images), tuple(base_pairs), names)


def load_problem(path: str) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemFormatError(f"cannot read problem file {path}: {exc}")
    return parse_problem(text)


def _base_order(problem: ProblemFile) -> PartialOrder:
    try:
        return PartialOrder.from_pairs(problem.n, problem.base_pairs)
    except ValueError as exc:
        raise ProblemFormatError(f"base-order pairs do not form a partial order: {exc}")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _result_payload(command: str, problem: ProblemFile, result: LatticeResult,
                    include_tables: bool, extra: dict | None = None) -> dict:
    payload = {
        "schema": SCHEMA,
        "command": command,
        "n": problem.n,
        "images": list(problem.images),
        "mode": result.mode,
        "covers": [list(c) for c in result.order.covers()],
        "trace": result.trace.to_json_dict(),
        "certificate": result.certificate.to_json_dict(include_tables=include_tables),
    }
    if extra:
        payload.update(extra)
    return payload


def _cmd_analyze(args) -> int:
    problem = load_problem(args.problem)
    analysis = components(problem.table)
    prohibited = sum(
        1
        for x in range(problem.n)
        for y in range(x + 1, problem.n)
        if is_prohibited(x, y, analysis)
    )
    _emit({
        "schema": SCHEMA,
        "command": "analyze",
        "n": problem.n,
        "images": list(problem.images),
        "components": [list(m) for m in analysis.components],
        "cycles": [list(c) for c in analysis.cycles],
        "periods": list(analysis.periods),
        "classes": [[list(cell) for cell in analysis.classes_of(cid)]
                    for cid in range(len(analysis.components))],
        "fixed_points": list(analysis.fixed_points),
        "cyclic_part": list(analysis.cyclic_part),
        "acyclic_part": list(analysis.acyclic_part),
        "prohibited_pairs": prohibited,
    })
    return 0


def _cmd_decide(args) -> int:
    problem = load_problem(args.problem)
    decision = decide(problem.table)
    payload = {"schema": SCHEMA, "command": "decide"}
    payload.update(decision.to_json_dict())
    _emit(payload)
    return 0 if decision.exists else 1


def _cmd_construct(args) -> int:
    problem = load_problem(args.problem)
    table = problem.table
    if problem.base_pairs and args.mode == "paper-literal":
        raise ProblemFormatError("paper-literal mode does not accept base-order pairs")
    if problem.base_pairs:
        base = _base_order(problem)
        report = construct_with_base(table, base)
        attempts = [a.to_json_dict() for a in report.attempts]
        if report.result is None:
            _emit({
                "schema": SCHEMA,
                "command": "construct",
                "n": problem.n,
                "images": list(problem.images),
                "mode": "with-base",
                "verified": False,
                "attempts": attempts,
            })
            return 3
        _emit(_result_payload("construct", problem, report.result, args.tables,
                              {"attempts": attempts, "verified": True}))
        return 0
    if args.mode == "paper-literal":
        rstar = None
        if args.rstar:
            try:
                rstar = [int(v) for v in args.rstar.split(",")]
            except ValueError:
                raise ProblemFormatError(f"--rstar must be a comma-separated list, got {args.rstar!r}")
        result = construct_paper_literal(table, rstar)
        green = result.certificate.is_lattice and result.certificate.is_endomorphism
        _emit(_result_payload("construct", problem, result, args.tables,
                              {"verified": bool(green)}))
        return 0 if green else 3
    try:
        result = construct(table)
    except NoLatticeError as exc:
        payload = {"schema": SCHEMA, "command": "construct", "refused": True}
        payload.update(exc.decision.to_json_dict())
        _emit(payload)
        return 1
    _emit(_result_payload("construct", problem, result, args.tables, {"verified": True}))
    return 0


def _load_order(path: str, n: int) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemFormatError(f"cannot read order file {path}: {exc}")
    if not isinstance(doc, dict) or "covers" not in doc:
        raise ProblemFormatError(f"order file {path} has no covers field")
    size = doc.get("n", n)
    if size != n:
        raise ProblemFormatError(f"order file is on {size} elements, problem on {n}")
    rel = np.eye(n, dtype=bool)
    for pair in doc["covers"]:
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(v, int) and 0 <= v < n for v in pair)):
            raise ProblemFormatError(f"order file has a malformed cover pair {pair!r}")
        rel[pair[0], pair[1]] = True
    return transitive_closure(rel)


def _cmd_verify(args) -> int:
    problem = load_problem(args.problem)
    rel = _load_order(args.order, problem.n)
    ok, witness = check_partial_order(rel)
    if not ok:
        _emit({
            "schema": SCHEMA,
            "command": "verify",
            "order_ok": False,
            "violation": {"axiom": witness[0], "elements": list(witness[1])},
        })
        return 3
    cert = certify(problem.table, rel)
    _emit({
        "schema": SCHEMA,
        "command": "verify",
        "order_ok": True,
        "n": problem.n,
        "covers": [list(c) for c in hasse_covers(rel)],
        "certificate": cert.to_json_dict(include_tables=args.tables),
    })
    return 0 if cert.is_lattice and cert.is_endomorphism else 3


def render_hasse_dot(result: LatticeResult, names: dict[int, str] | None = None) -> str:
    """DOT digraph of the cover relation, hubs visually marked."""
    names = names or {}
    rel = result.order.rel
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for x in range(len(rel)):
        attrs = [f'label="{names.get(x, str(x))}"']
        if x == result.trace.hub_low:
            attrs += ["style=filled", "fillcolor=lightblue"]
        elif x == result.trace.hub_high:
            attrs += ["style=filled", "fillcolor=lightsalmon"]
        lines.append(f'  n{x} [{", ".join(attrs)}];')
    for a, b in result.order.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)


def _cmd_hasse(args) -> int:
    problem = load_problem(args.problem)
    if problem.base_pairs:
        report = construct_with_base(problem.table, _base_order(problem))
        if report.result is None:
            print("error: no verified lattice extends the base order", file=sys.stderr)
            return 3
        result = report.result
    else:
        try:
            result = construct(problem.table)
        except NoLatticeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    print(render_hasse_dot(result, problem.names))
    return 0


def _cmd_oracle(args) -> int:
    problem = load_problem(args.problem)
    exists, witness = oracle_decide(problem.table)
    decision = decide(problem.table)
    _emit({
        "schema": SCHEMA,
        "command": "oracle",
        "n": problem.n,
        "images": list(problem.images),
        "exists": exists,
        "witness_covers": None if witness is None else [list(c) for c in witness.covers()],
        "agrees_with_decide": exists == decision.exists,
    })
    return 0 if exists else 1


def _cmd_sweep(args) -> int:
    if not 1 <= args.size <= MAX_N:
        raise ProblemFormatError(f"sweep size must be within 1..{MAX_N}, got {args.size}")
    report = sweep_compare(args.size, sample=args.sample, seed=args.seed)
    payload = {"schema": SCHEMA, "command": "sweep"}
    payload.update(report.to_json_dict())
    _emit(payload)
    return 0 if report.ok else 3


def example_instance(cycle_length: int) -> str:
    """Problem text for two fixed points plus one cycle of the given length."""
    if cycle_length < 2:
        raise ValueError("cycle length must be at least 2")
    n = cycle_length + 2
    images = [0, 1] + [i + 1 for i in range(2, n - 1)] + [2]
    lines = [str(n), " ".join(str(v) for v in images), "name: 0 p", "name: 1 q"]
    return "\n".join(lines)


def _cmd_example(args) -> int:
    try:
        print(example_instance(args.cycle_length))
    except ValueError as exc:
        raise ProblemFormatError(str(exc))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="endolattice",
        description="Decide, construct, and verify lattice structures on which "
                    "a finite self-map acts as a lattice endomorphism.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural analysis of the map")
    p.add_argument("problem")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("decide", help="does a compatible lattice exist?")
    p.add_argument("problem")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("construct", help="build and certify a compatible lattice")
    p.add_argument("problem")
    p.add_argument("--mode", choices=["auto", "repaired", "paper-literal"], default="auto")
    p.add_argument("--rstar", default=None,
                   help="paper-literal only: comma-separated linear order on the acyclic part")
    p.add_argument("--tables", action="store_true", help="include join/meet tables")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="re-certify an order file against the map")
    p.add_argument("problem")
    p.add_argument("--order", required=True, help="JSON file with a covers field")
    p.add_argument("--tables", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("hasse", help="DOT diagram of the constructed lattice")
    p.add_argument("problem")
    p.set_defaults(func=_cmd_hasse)

    p = sub.add_parser("oracle", help="brute-force existence over all small lattices")
    p.add_argument("problem")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("sweep", help="decide-vs-oracle sweep over all maps of a size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--sample", type=int, default=None,
                   help="check a pseudo-random sample instead of every map")
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("example", help="emit a cycle-plus-two-fixed-points problem file")
    p.add_argument("cycle_length", type=int)
    p.set_defaults(func=_cmd_example)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoLatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
