"""Command line interface.

Subcommands:
    validate FILE       realizability conditions of a graph (exit 0 iff all hold)
    invariants FILE     index counts, Todd genus, chi_y, Chern numbers
    reduce FILE         reduce to semi-free bases; writes a trace and a log
    realize FILE        plumbing sequence, derived graph and torus weights per component
    generate NAME       catalog graph (cp2, hirzebruch, semifree-base, square,
                        min-fixed-points, odd-chain) with an expected-invariants sidecar
    check-chiy FILE     chi_y fixed point sums at each sample value of t
    census              exhaustive check over small cycles

FILE is a graph document (JSON), a trace, a plumbing document, or fixed point
data in the line format; ``-`` reads standard input.  Exit status is 1 when
a check fails (with a JSON reason on stderr) and 2 on unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .census import run_census, worker_count
from .errors import CircleGraphError, GraphError, InvalidFixedPointData, PlumbingError
from .fpdata import (
    DEFAULT_SAMPLES,
    FixedPointData,
    chi_y,
    chi_y_at,
    invariant_report,
    parse_fixed_point_data,
)
from .multigraph import (
    Multigraph,
    candidate_failure,
    dumps_graph,
    fixed_point_data,
    graph_from_dict,
    graph_to_dict,
    predicate_table,
    to_dot,
    union_all,
)
from .operations import OperationTrace, replay
from .plumbing import PlumbingSequence, derived_graph, realize, t2_weights, verify_conditions
from .reduction import NotRealizable, format_log, realizability_check


class InputError(Exception):
    """Unreadable or unparsable input (exit status 2)."""


class Failure(Exception):
    """A check failed (exit status 1)."""

    def __init__(self, reason, message=""):
        super().__init__(message or reason)
        self.reason = reason


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _sequences_from_document(doc) -> list[PlumbingSequence]:
    if isinstance(doc, dict) and "components" in doc:
        records = [c["sequence"] for c in doc["components"]]
    elif isinstance(doc, list) and doc and isinstance(doc[0], list):
        records = doc
    else:
        records = [doc]
    return [PlumbingSequence.from_records(r) for r in records]


def load_input(path: str, derived: bool = False):
    """Return a Multigraph or FixedPointData read from ``path``."""
    text = _read(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    try:
        if derived:
            if doc is None:
                raise InputError(f"{path}: plumbing document must be JSON")
            seqs = _sequences_from_document(doc)
            for s in seqs:
                verify_conditions(s)
            return union_all(derived_graph(s) for s in seqs)
        if doc is None:
            return parse_fixed_point_data(text)
        if isinstance(doc, dict) and "base" in doc:
            return replay(OperationTrace.from_dict(doc))
        if isinstance(doc, dict):
            return graph_from_dict(doc)
        raise InputError(f"{path}: unrecognized document")
    except PlumbingError as exc:
        if derived and exc.position is not None:
            raise Failure(exc.reason, str(exc)) from None
        raise InputError(f"{path}: {exc}") from None
    except (GraphError, InvalidFixedPointData, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_graph(path: str, derived: bool = False) -> Multigraph:
    obj = load_input(path, derived)
    if not isinstance(obj, Multigraph):
        raise InputError(f"{path}: expected a graph document")
    return obj


def cmd_validate(args) -> int:
    g = load_graph(args.file, args.derived)
    if args.format == "dot":
        _write(to_dot(g), None)
        reason = candidate_failure(g)
    else:
        table = predicate_table(g)
        reason = candidate_failure(g)
        if args.format == "json":
            out = {
                "predicates": table,
                "candidate": reason is None,
                "reason": reason,
                "fixed_point_data": [list(p) for p in fixed_point_data(g).points] if table["two-regular"] else None,
            }
            _write(_dump(out), None)
        else:
            lines = [f"{name:<18}{'yes' if ok else 'no'}" for name, ok in table.items()]
            lines.append(f"{'candidate':<18}{'yes' if reason is None else 'no'}")
            _write("\n".join(lines) + "\n", None)
    if reason is not None:
        raise Failure(reason, f"graph fails the {reason} condition")
    return 0


def _data_of(obj) -> FixedPointData:
    if isinstance(obj, Multigraph):
        reason = candidate_failure(obj)
        if reason in ("two-regular", "self-loop", "bad-label"):
            raise Failure(reason, "graph is not a valid 2-regular loop-free multigraph")
        return fixed_point_data(obj)
    return obj


def cmd_invariants(args) -> int:
    d = _data_of(load_input(args.file))
    try:
        report = invariant_report(d)
    except CircleGraphError as exc:
        raise Failure(exc.reason, str(exc)) from None
    _write(_dump(report.to_dict()), args.output)
    return 0


def cmd_check_chiy(args) -> int:
    d = _data_of(load_input(args.file))
    lines = []
    for t in DEFAULT_SAMPLES:
        values = ", ".join(str(v) for v in chi_y_at(d, t))
        lines.append(f"t={t}: {values}")
    try:
        chi = chi_y(d)
    except CircleGraphError as exc:
        lines.append("constant: no")
        _write("\n".join(lines) + "\n", None)
        raise Failure(exc.reason, str(exc)) from None
    lines.append("constant: yes")
    lines.append("chi_y: " + ", ".join(str(c) for c in chi))
    _write("\n".join(lines) + "\n", None)
    return 0


def _checked(g: Multigraph):
    verdict = realizability_check(g)
    if not verdict.accepted:
        raise Failure(verdict.reason, verdict.detail or f"graph fails the {verdict.reason} condition")
    return verdict.result


def cmd_reduce(args) -> int:
    g = load_graph(args.file)
    result = _checked(g)
    trace = OperationTrace(
        union_all(result.bases),
        tuple(step for t in result.traces for step in t.steps),
    )
    log = format_log(result)
    _write(trace.dumps(), args.output)
    if args.log:
        _write(log, args.log)
    elif args.output in (None, "-"):
        sys.stderr.write(log)
    else:
        sys.stdout.write(log)
    return 0


def cmd_realize(args) -> int:
    g = load_graph(args.file)
    _checked(g)
    try:
        seqs = realize(g)
    except NotRealizable as exc:
        raise Failure(exc.reason, str(exc)) from None
    if args.format == "dot":
        _write(to_dot(union_all(derived_graph(s) for s in seqs)), args.output)
        return 0
    components = []
    for s in seqs:
        components.append(
            {
                "sequence": s.to_records(),
                "graph": graph_to_dict(derived_graph(s)),
                "t2_weights": [{"id": pid, "weights": [list(u), list(w)]} for pid, u, w in t2_weights(s)],
            }
        )
    _write(_dump({"components": components}), args.output)
    return 0


def cmd_generate(args) -> int:
    _, needed = catalog.GENERATORS[args.name]
    params = {p: getattr(args, p) for p in needed}
    missing = [f"--{p}" for p, v in params.items() if v is None]
    if missing:
        raise InputError(f"{args.name} needs {' '.join(missing)}")
    try:
        item = catalog.entry(args.name, **params)
    except (CircleGraphError, ValueError) as exc:
        raise InputError(f"{args.name}: {exc}") from None
    text = to_dot(item.graph) if args.format == "dot" else dumps_graph(item.graph)
    _write(text, args.output)
    if args.output not in (None, "-"):
        sidecar = {"name": item.name, "parameters": item.parameters, "expected": item.expected.to_dict()}
        _write(_dump(sidecar), args.output + ".expected.json")
    return 0


def cmd_census(args) -> int:
    workers = args.workers if args.workers is not None else worker_count()
    report = run_census(args.max_vertices, args.max_label, workers)
    _write(_dump(report.to_dict()), args.output)
    if report.failures:
        raise Failure("not-reducible", f"{len(report.failures)} candidate graphs were not realized")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circlegraphs", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the realizability conditions")
    p.add_argument("file")
    p.add_argument("--derived", action="store_true", help="FILE is a plumbing document; check its derived graph")
    p.add_argument("--format", choices=("table", "json", "dot"), default="table")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="invariant report")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("reduce", help="reduce to semi-free bases")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="trace file (default: stdout)")
    p.add_argument("--log", help="log file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("realize", help="plumbing sequences for each component")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("generate", help="catalog graph")
    p.add_argument("name", choices=sorted(catalog.GENERATORS))
    for name in ("a", "b", "n", "c", "d", "k", "f", "g", "h", "n0", "n1"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("-o", "--output", help="graph file; also writes <output>.expected.json")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check-chiy", help="chi_y sums at the sample points")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_chiy)

    p = sub.add_parser("census", help="exhaustive check over small cycles")
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--max-label", type=int, default=4)
    p.add_argument("--workers", type=int, help="process count (default: $CIRCLEGRAPHS_WORKERS or 1)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(json.dumps({"status": "error", "reason": "input", "message": str(exc)}) + "\n")
        return 2
    except Failure as exc:
        sys.stderr.write(json.dumps({"status": "rejected", "reason": exc.reason, "message": str(exc)}) + "\n")
        return 1
    except CircleGraphError as exc:
        sys.stderr.write(json.dumps({"status": "rejected", "reason": exc.reason, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
