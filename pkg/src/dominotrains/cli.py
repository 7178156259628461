"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 parse or cap error, 3 verification
mismatch (or an internal invariant violation).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from collections.abc import Sequence
from dataclasses import dataclass

from .domino import (
    ENUM_CAP,
    CountTable,
    PieceList,
    count_trains,
    enumerate_trains,
    table_from_coefficients,
)
from .errors import DominoError, InputParseError, InvariantViolation
from .euler import ENGINES, eul_counts, oracle_table, verify_engines
from .graph import Multigraph, dominoes_from_graph
from .oracle import enumerate_eulerian_paths
from .symalg import DP_CAP, NAIVE_CAP, symmetrize_dp, symmetrize_naive

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3


@dataclass(frozen=True)
class InputDocument:
    kind: str
    items: list[tuple[int, int]]
    source: str | None = None

    def pieces(self) -> PieceList:
        return PieceList.from_pairs(self.items)

    def graph(self) -> Multigraph:
        return Multigraph.from_edges(self.items)


def parse_input(text: str, kind: str = "dominoes", source: str | None = None) -> InputDocument:
    """Parse ``i j`` lines; blank lines and ``#`` comments are skipped."""
    if kind not in ("dominoes", "edges"):
        raise ValueError(f"unknown input kind {kind!r}")
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise InputParseError(f"expected two nonnegative integers, got {raw.strip()!r}", lineno)
        items.append((int(fields[0]), int(fields[1])))
    if not items:
        raise InputParseError("empty input")
    return InputDocument(kind, items, source)


def table_to_json(table: CountTable, m: int, engine: str) -> dict:
    return {
        "m": m,
        "engine": engine,
        "counts": [{"start": s, "end": e, "count": str(c)} for s, e, c in table.records()],
    }


def table_from_json(doc: dict) -> CountTable:
    return CountTable({(r["start"], r["end"]): int(r["count"]) for r in doc["counts"]})


def _parse_label_map(spec: str | None) -> dict[int, int]:
    if not spec:
        return {}
    out = {}
    for part in spec.split(","):
        old, sep, new = part.partition(":")
        if not sep or not old.strip().isdigit() or not new.strip().isdigit():
            raise InputParseError(f"bad --labels entry {part!r}; expected OLD:NEW")
        out[int(old)] = int(new)
    return out


def _relabel(table: CountTable, mapping: dict[int, int]) -> CountTable:
    if not mapping:
        return table
    return CountTable({(mapping.get(k.lo, k.lo), mapping.get(k.hi, k.hi)): c for k, c in table.items()})


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _label(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("labels are nonnegative integers")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dominotrains", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    common.add_argument("--as", dest="kind", choices=("dominoes", "edges"), default="dominoes")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--naive-cap", type=_positive, default=NAIVE_CAP)
    common.add_argument("--dp-cap", type=_positive, default=DP_CAP)
    common.add_argument("--enum-cap", type=_positive, default=ENUM_CAP)
    common.add_argument("--labels", help="output relabelling, e.g. '1:10,2:20'")

    p = sub.add_parser("count", parents=[common], help="count trains / eulerian paths")
    p.add_argument("--engine", choices=ENGINES, default="dp")

    p = sub.add_parser("enumerate", parents=[common], help="list trains as vertex sequences")
    p.add_argument("--start", type=_label)
    p.add_argument("--end", type=_label)
    p.add_argument("--limit", type=_positive)

    sub.add_parser("verify", parents=[common], help="cross-check all engines")

    p = sub.add_parser("bench", parents=[common], help="time engines on generated families")
    p.add_argument("--family", choices=("path", "cycle", "complete", "random"))
    p.add_argument("--size", type=_positive, default=5, help="n for path/cycle/complete")
    p.add_argument("--vertices", type=_positive, default=5, help="random family")
    p.add_argument("--edges", type=_positive, default=10, help="random family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engines", default="dp,oracle")
    p.add_argument("--no-timing", action="store_true", help="leave the seconds column blank")
    return parser


def _read(args) -> InputDocument:
    if args.input == "-":
        text, source = sys.stdin.read(), None
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputParseError(f"cannot read {args.input}: {exc.strerror}") from None
        source = args.input
    return parse_input(text, args.kind, source)


def cmd_count(args, out) -> int:
    doc = _read(args)
    cap = args.naive_cap if args.engine == "naive" else args.dp_cap
    if doc.kind == "dominoes" and args.engine != "oracle":
        table = count_trains(doc.pieces(), args.engine, cap=cap, workers=args.threads)
    else:
        table = eul_counts(doc.graph(), args.engine, cap=cap, workers=args.threads).table
    table = _relabel(table, _parse_label_map(args.labels))
    m = len(doc.items)
    if args.format == "json":
        out.write(json.dumps(table_to_json(table, m, args.engine), indent=2) + "\n")
    else:
        out.write(f"# m={m} engine={args.engine}\n")
        for s, e, c in table.records():
            out.write(f"{s} {e} {c}\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    doc = _read(args)
    mapping = _parse_label_map(args.labels)
    if doc.kind == "dominoes":
        pieces = doc.pieces()
        trains = enumerate_trains(pieces, args.start, args.end, args.limit, cap=args.enum_cap)
        paths = [t.vertices(pieces) for t in trains]
    else:
        g = doc.graph()
        if args.start is not None and args.start not in g.vertices:
            paths = []
        else:
            paths = enumerate_eulerian_paths(g, args.start, cap=args.enum_cap)
        if args.end is not None:
            paths = [p for p in paths if p[-1] == args.end]
        if args.limit is not None:
            paths = paths[:args.limit]
    if args.format == "json":
        out.write(json.dumps([[mapping.get(v, v) for v in p] for p in paths]) + "\n")
    else:
        for p in paths:
            out.write(" ".join(str(mapping.get(v, v)) for v in p) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    doc = _read(args)
    report = verify_engines(doc.graph(), naive_cap=args.naive_cap, dp_cap=args.dp_cap,
                            workers=args.threads)
    if args.format == "json":
        body = {
            "m": report.m,
            "ok": report.ok,
            "engines": report.engines,
            "skipped": report.skipped,
            "errors": report.errors,
            "divisible": report.divisibility,
            "mismatch": report.mismatch,
            "tables": {n: table_to_json(t, report.m, n)["counts"] for n, t in report.tables.items()},
        }
        out.write(json.dumps(body, indent=2) + "\n")
    else:
        out.write("\n".join(report.lines()) + "\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def family_graph(family: str, size: int = 5, vertices: int = 5, edges: int = 10,
                 seed: int = 0) -> tuple[str, Multigraph]:
    if family == "path":
        return f"path_{size}", Multigraph.from_edges([(i, i + 1) for i in range(1, size)], range(1, size + 1))
    if family == "cycle":
        return f"cycle_{size}", Multigraph.from_edges([(i, i % size + 1) for i in range(1, size + 1)])
    if family == "complete":
        pairs = [(i, j) for i in range(1, size + 1) for j in range(i + 1, size + 1)]
        return f"K_{size}", Multigraph.from_edges(pairs, range(1, size + 1))
    if family == "random":
        rng = random.Random(seed)
        pairs = [(rng.randint(1, vertices), rng.randint(1, vertices)) for _ in range(edges)]
        return f"random_v{vertices}_m{edges}_s{seed}", Multigraph.from_edges(pairs)
    raise ValueError(f"unknown family {family!r}")


def _run_engine(name: str, g: Multigraph, args) -> tuple[CountTable, int]:
    stats: dict = {}
    if name == "oracle":
        return oracle_table(g, stats=stats), stats["peak_states"]
    faces = dominoes_from_graph(g).faces
    if name == "dp":
        raw = symmetrize_dp(faces, cap=args.dp_cap, workers=args.threads, stats=stats)
    else:
        raw = symmetrize_naive(faces, cap=args.naive_cap, stats=stats)
    return table_from_coefficients(raw, g.m), stats["peak_states"]


def cmd_bench(args, out) -> int:
    if args.family:
        name, g = family_graph(args.family, args.size, args.vertices, args.edges, args.seed)
    else:
        doc = _read(args)
        name, g = (doc.source or "stdin"), doc.graph()
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in engines:
        if e not in ENGINES:
            raise InputParseError(f"unknown engine {e!r} in --engines")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance", "m", "engine", "status", "seconds", "peak_states", "counts"])
    for e in engines:
        t0 = time.perf_counter()
        try:
            table, peak = _run_engine(e, g, args)
        except DominoError as exc:
            writer.writerow([name, g.m, e, f"error: {exc}", "", "", ""])
            continue
        elapsed = time.perf_counter() - t0
        counts = ";".join(f"{s}-{t}:{c}" for s, t, c in table.records())
        seconds = "" if args.no_timing else f"{elapsed:.6f}"
        writer.writerow([name, g.m, e, "ok", seconds, peak, counts])
    out.write(buf.getvalue())
    return EXIT_OK


COMMANDS = {"count": cmd_count, "enumerate": cmd_enumerate, "verify": cmd_verify, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (DominoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
