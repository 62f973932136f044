"""Command line entry point: ``dmpath <command> ...``.

Exit codes: 0 success, 1 a verified claim failed (counterexample), 2 usage or
parse error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, TextIO

from . import constructions as cons
from . import extremal as ext
from . import nordhaus_gaddum as ng
from .census import EXHAUSTIVE_CAP, default_workers
from .graph import (
    MAX_VERTICES,
    CapacityError,
    Graph,
    Graph6Error,
    check_capacity,
    graph6_decode,
    read_graph6_lines,
)
from .solver import (
    PreconditionError,
    characterize_mp2,
    check_corollary_bounds,
    mp_exact,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    action: str | None
    options: dict[str, Any]
    format: str
    workers: int
    seed: int
    max_vertices: int
    exhaustive_cap: int

    def to_json(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "action": self.action,
            "options": self.options,
            "format": self.format,
            "workers": self.workers,
            "seed": self.seed,
            "max_vertices": self.max_vertices,
            "exhaustive_cap": self.exhaustive_cap,
        }


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if value is None:
        return ""
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


class Emitter:
    """Line-delimited JSON, CSV with one header per table, or ``key=value`` text."""

    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out
        self._header: tuple[str, ...] | None = None
        self._csv = csv.writer(out, lineterminator="\n")

    def config(self, cfg: RunConfig) -> None:
        text = json.dumps(cfg.to_json(), separators=(",", ":"))
        if self.fmt == "json":
            self.out.write('{"config":' + text + "}\n")
        else:
            self.out.write(f"# config {text}\n")

    def record(self, rec: dict[str, Any]) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps(rec, separators=(",", ":")) + "\n")
        elif self.fmt == "csv":
            keys = tuple(rec)
            if keys != self._header:
                self._csv.writerow(keys)
                self._header = keys
            self._csv.writerow([_cell(v) for v in rec.values()])
        else:
            self.out.write(" ".join(f"{k}={_cell(v)}" for k, v in rec.items()) + "\n")


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def _graph_lines(args: argparse.Namespace, stdin: TextIO) -> Iterator[str]:
    if getattr(args, "g6", None):
        yield from args.g6
    if getattr(args, "file", None):
        with open(args.file) as fh:
            yield from fh
    if getattr(args, "stdin", False) or not (getattr(args, "g6", None) or getattr(args, "file", None)):
        yield from stdin


def _graphs(args: argparse.Namespace, stdin: TextIO) -> Iterator[Graph]:
    for g in read_graph6_lines(_graph_lines(args, stdin)):
        check_capacity(g.n, args.max_vertices)
        yield g


def _single_graph(args: argparse.Namespace) -> Graph:
    g = graph6_decode(args.g6)
    check_capacity(g.n, args.max_vertices)
    return g


def _parse_params(pairs: Iterable[str]) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for item in pairs:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {item!r}")
        params[key] = value
    return params


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_mp(args, emit: Emitter, stdin: TextIO) -> int:
    for g in _graphs(args, stdin):
        res = mp_exact(g, strict=args.strict)
        rec: dict[str, Any] = {"n": g.n, "mp": res.value}
        if args.strict:
            rec["strict"] = True
        if args.witness:
            rec["witness"] = list(res.witness.vertices)
            rec["degrees"] = list(res.witness.degree_seq)
            rec["direction"] = res.witness.direction
        emit.record(rec)
    return EXIT_OK


def cmd_bounds(args, emit: Emitter, stdin: TextIO) -> int:
    g = _single_graph(args)
    try:
        rep = check_corollary_bounds(g, args.r)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    emit.record({
        "n": rep.n,
        "mp": rep.mp,
        "omega": rep.omega,
        "alpha": rep.alpha,
        "max_degree": rep.max_degree,
        "mp_ge_omega": rep.mp_ge_omega,
        "mp_ge_n_over_alpha": rep.mp_ge_n_over_alpha,
        "max_mp_alpha_ge_sqrt_n": rep.max_mp_alpha_ge_sqrt_n,
        "r": rep.r,
        "k1r_free": rep.k1r_free,
        "k1r_bound": rep.k1r_bound,
        "mp_ge_k1r_bound": rep.mp_ge_k1r_bound,
        "violations": rep.violations,
    })
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_char2(args, emit: Emitter, stdin: TextIO) -> int:
    g = _single_graph(args)
    try:
        part = characterize_mp2(g)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    mp = mp_exact(g).value
    agrees = part.valid == (mp == 2)
    emit.record({
        "n": g.n,
        "valid": part.valid,
        "part_a": sorted(part.part_a),
        "part_b": sorted(part.part_b),
        "mp": mp,
        "agrees": agrees,
    })
    return EXIT_OK if agrees else EXIT_VIOLATION


def cmd_construct(args, emit: Emitter, stdin: TextIO) -> int:
    params = _parse_params(args.param or [])
    try:
        cert = cons.construct(args.family, params)
    except cons.ValidationFailed as exc:
        emit.record({"family": args.family, "params": params, "valid": False, "detail": str(exc)})
        return EXIT_VIOLATION
    except CapacityError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit.record(cert.to_json())
    return EXIT_OK


def _verify_inputs(args, stdin: TextIO) -> Iterator[tuple[Graph, cons.ConstructionCert | None]]:
    """Graph6 lines or one certificate JSON object per line."""
    for lineno, line in enumerate(_graph_lines(args, stdin), 1):
        text = line.strip()
        if not text:
            continue
        if text.startswith("{"):
            try:
                doc = json.loads(text)
                cert = cons.ConstructionCert.from_json(doc)
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"line {lineno}: bad certificate ({exc})") from None
            check_capacity(cert.graph.n, args.max_vertices)
            yield cert.graph, cert
        else:
            try:
                g = graph6_decode(text)
            except Graph6Error as exc:
                raise Graph6Error(f"line {lineno}: {exc.message}", exc.offset) from None
            check_capacity(g.n, args.max_vertices)
            yield g, None


def cmd_verify(args, emit: Emitter, stdin: TextIO) -> int:
    status = EXIT_OK
    for g, cert in _verify_inputs(args, stdin):
        rec: dict[str, Any] = {"n": g.n, "edges": g.num_edges}
        if args.what == "mop":
            try:
                mc = cons.validate_mop(g)
            except cons.NotMaximalOuterplanar as exc:
                rec.update(valid=False, condition=exc.condition, detail=str(exc))
                status = EXIT_VIOLATION
            else:
                rec.update(valid=True, hamiltonian_cycle=list(mc.hamiltonian_cycle),
                           chords=[list(c) for c in mc.chords])
        elif args.what == "maxplanar":
            if cert is None or cert.embedding is None:
                raise UsageError("maxplanar verification needs a certificate with an embedding")
            try:
                ok = cons.validate_maxplanar(g, cert.embedding)
                faces = len(cons.trace_faces(g, cert.embedding))
            except cons.RotationError as exc:
                rec.update(valid=False, detail=str(exc))
                status = EXIT_VIOLATION
            else:
                rec.update(valid=ok, faces=faces)
                if not ok:
                    status = EXIT_VIOLATION
        else:
            applicable = cons.is_mop(g)
            rec["applicable"] = applicable
            if applicable:
                ok = cons.check_light_edge(g)
                rec["valid"] = ok
                if not ok:
                    status = EXIT_VIOLATION
        emit.record(rec)
    return status


def cmd_extremal(args, emit: Emitter, stdin: TextIO) -> int:
    n, k = args.n, args.k
    try:
        if args.quantity == "t":
            rec = ext.turan_record(n, k, witness=args.witness)
        elif args.quantity == "g":
            rec = ext.g_number(n, k)
        elif args.stream:
            with open(args.stream) as fh:
                rec = ext.f_number(n, k, source="stream", stream=fh, stream_name=args.stream)
        else:
            rec = ext.f_number(n, k, cap=args.exhaustive_cap, workers=args.workers)
    except ext.ExtremalError as exc:
        raise UsageError(str(exc)) from None
    emit.record(rec.to_json())
    return EXIT_OK if ext.witness_mp_ok(rec) else EXIT_VIOLATION


def cmd_sweep(args, emit: Emitter, stdin: TextIO) -> int:
    status = EXIT_OK
    if args.table == "gap":
        if args.k is None or args.n_max is None:
            raise UsageError("sweep gap needs --k and --n-max")
        try:
            rows = ext.gap_sweep(args.k, args.n_max)
        except ext.ExtremalError as exc:
            raise UsageError(str(exc)) from None
        for row in rows:
            emit.record({"n": row.n, "k": row.k, "t": row.t, "g": row.g, "gap": row.gap,
                         "bound": str(row.bound), "ok": row.ok})
            if not row.ok:
                status = EXIT_VIOLATION
    else:
        if args.k_max is None or args.n_max is None:
            raise UsageError("sweep conjecture needs --k-max and --n-max")
        for row in ext.conjecture_scan(args.k_max, min(args.n_max, args.exhaustive_cap)):
            emit.record({"n": row.n, "k": row.k, "f": row.f, "g": row.g, "equal": row.equal})
    return status


def cmd_ng(args, emit: Emitter, stdin: TextIO) -> int:
    if args.what == "sum":
        status = EXIT_OK
        for g in _graphs(args, stdin):
            rec = ng.ng_sum(g)
            emit.record(rec.to_json())
            if not rec.within_bounds:
                status = EXIT_VIOLATION
        return status
    if args.n is None:
        raise UsageError(f"ng {args.what} needs --n")
    try:
        if args.what == "upper":
            cert = ng.ng_upper_cert(args.n)
            emit.record(cert.to_json())
        elif args.what == "cliques":
            emit.record(ng.ng_cliques_cert(args.n).to_json())
        else:
            rows = ng.ng_exhaustive_audit(args.n, samples=args.samples, seed=args.seed, workers=args.workers)
            bad = False
            for row in rows:
                emit.record(row.to_json())
                bad = bad or bool(row.violations)
            return EXIT_VIOLATION if bad else EXIT_OK
    except cons.ValidationFailed as exc:
        emit.record({"n": args.n, "valid": False, "detail": str(exc)})
        return EXIT_VIOLATION
    except CapacityError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default=None,
                        help="output format (default json; csv for sweeps)")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes for exhaustive scans (default: DMPATH_WORKERS or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-vertices", type=int, default=MAX_VERTICES,
                        help=f"reject input graphs above this order (at most {MAX_VERTICES})")
    common.add_argument("--exhaustive-cap", type=int, default=EXHAUSTIVE_CAP,
                        help="largest n for labeled exhaustive enumeration")
    common.add_argument("--echo-config", action="store_true", help="print the run configuration first")
    common.add_argument("-v", "--verbose", action="store_true")

    def graph_inputs(p: argparse.ArgumentParser) -> None:
        p.add_argument("--g6", action="append", help="graph6 string (repeatable)")
        p.add_argument("--file", help="file with one graph6 string per line")
        p.add_argument("--stdin", action="store_true", help="read graph6 lines from stdin")

    ap = argparse.ArgumentParser(prog="dmpath", description="Degree-monotone path toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mp", parents=[common], help="exact mp(G) per input graph")
    graph_inputs(p)
    p.add_argument("--strict", action="store_true", help="strictly monotone degrees")
    p.add_argument("--witness", action="store_true", help="include a longest path")
    p.set_defaults(func=cmd_mp)

    p = sub.add_parser("bounds", parents=[common], help="audit mp against omega, alpha and K_{1,r} bounds")
    p.add_argument("--g6", required=True)
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("char2", parents=[common], help="structural test for mp(G) = 2")
    p.add_argument("--g6", required=True)
    p.set_defaults(func=cmd_char2)

    p = sub.add_parser("construct", parents=[common], help="build and certify an extremal family")
    p.add_argument("family", choices=cons.FAMILIES)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="certify MOPs, triangulations, light edges")
    p.add_argument("what", choices=("mop", "maxplanar", "light-edge"))
    graph_inputs(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extremal", parents=[common], help="f(n,k), g(n,k) or t(n,k)")
    p.add_argument("quantity", choices=("f", "g", "t"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--stream", help="graph6 file covering all graphs on n vertices")
    p.add_argument("--witness", action="store_true", help="attach the Turan graph for t")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("sweep", parents=[common], help="gap or conjecture tables")
    p.add_argument("table", choices=("gap", "conjecture"))
    p.add_argument("--k", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--n-max", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ng", parents=[common], help="mp(G) + mp(complement)")
    p.add_argument("what", choices=("sum", "upper", "cliques", "audit"))
    p.add_argument("--n", type=int)
    graph_inputs(p)
    p.add_argument("--samples", type=int, default=2000, help="random graphs per n beyond the exhaustive cap")
    p.set_defaults(func=cmd_ng)
    return ap


def main(argv: list[str] | None = None, stdout: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = sys.stdout if stdout is None else stdout
    inp = sys.stdin if stdin is None else stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.workers is None:
        args.workers = default_workers()
    fmt = args.format or ("csv" if args.command == "sweep" else "json")
    if args.max_vertices > MAX_VERTICES or args.max_vertices < 1:
        print(f"dmpath: --max-vertices must be in 1..{MAX_VERTICES}", file=sys.stderr)
        return EXIT_USAGE
    emit = Emitter(fmt, out)
    if args.echo_config:
        skip = {"func", "command", "format", "workers", "seed", "max_vertices", "exhaustive_cap",
                "echo_config", "verbose", "family", "what", "quantity", "table"}
        action = next((getattr(args, a) for a in ("family", "what", "quantity", "table") if hasattr(args, a)), None)
        options = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
        emit.config(RunConfig(args.command, action, options, fmt, args.workers, args.seed,
                              args.max_vertices, args.exhaustive_cap))
    try:
        return args.func(args, emit, inp)
    except CapacityError as exc:
        print(f"dmpath: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (Graph6Error, UsageError, OSError) as exc:
        print(f"dmpath: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
