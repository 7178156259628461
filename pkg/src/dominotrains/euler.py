"""Eulerian path counts for multigraphs and cross-engine verification."""

from __future__ import annotations

from dataclasses import dataclass, field

from .domino import CountTable, count_placement_orders, raw_symmetrization, table_from_coefficients
from .errors import DominoError, EmptyProductError, InvariantViolation
from .graph import Multigraph, dominoes_from_graph
from .oracle import WORD_BITS, trail_count_table
from .symalg import DP_CAP, NAIVE_CAP

ENGINES = ("naive", "dp", "oracle")


@dataclass(frozen=True)
class EulCountResult:
    table: CountTable
    m: int
    engine: str


def oracle_table(g: Multigraph, stats: dict | None = None) -> CountTable:
    directed = trail_count_table(g, stats=stats)
    for (s, e), c in directed.items():
        if directed.get((e, s), 0) != c:
            raise InvariantViolation(f"trail counts {s}->{e} and {e}->{s} differ")
    return CountTable({(s, e): c for (s, e), c in directed.items() if s <= e})


def eul_counts(g: Multigraph, engine: str = "dp", cap: int | None = None, workers: int = 1) -> EulCountResult:
    """Count eulerian paths between every pair of vertices.

    The entry for ``{i, j}`` is the number of paths from ``i`` to ``j``.
    """
    if g.m == 0:
        raise EmptyProductError()
    if engine == "oracle":
        table = oracle_table(g)
    elif engine in ("naive", "dp"):
        pieces = dominoes_from_graph(g)
        raw = raw_symmetrization(pieces, engine, cap=cap, workers=workers)
        table = table_from_coefficients(raw, g.m)
    else:
        raise ValueError(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")
    return EulCountResult(table, g.m, engine)


@dataclass
class VerificationReport:
    m: int
    engines: list[str] = field(default_factory=list)
    tables: dict[str, CountTable] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    divisibility: dict[str, bool] = field(default_factory=dict)
    mismatch: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.mismatch is None
            and not self.errors
            and all(self.divisibility.values())
            and len(self.tables) >= 2
        )

    def lines(self) -> list[str]:
        out = [f"m = {self.m}", f"engines run: {', '.join(self.engines)}"]
        out += [f"skipped {name}: {why}" for name, why in self.skipped.items()]
        for name, ok in self.divisibility.items():
            out.append(f"{name}: coefficients divisible by 2^{self.m - 1}: {'yes' if ok else 'NO'}")
        out += [f"error in {name}: {msg}" for name, msg in self.errors.items()]
        if self.ok:
            ref = next(iter(self.tables.values()))
            out.append(f"{len(self.tables)} engines agree on {len(ref)} entries")
            out += [f"  {s} {e} {c}" for s, e, c in ref.records()]
        elif self.mismatch:
            out.append(f"MISMATCH {self.mismatch}")
        else:
            out.append("FAILED")
        return out


def _first_difference(ref_name, ref, name, other) -> str | None:
    for key in sorted(set(ref) | set(other)):
        a, b = ref.get(key), other.get(key)
        if a != b:
            return f"entry {key.lo} {key.hi}: {ref_name}={a} {name}={b}"
    return None


def verify_engines(g: Multigraph, naive_cap: int = NAIVE_CAP, dp_cap: int = DP_CAP,
                   workers: int = 1) -> VerificationReport:
    """Run every engine that fits the caps and compare the tables.

    Disagreements and internal failures are recorded in the report, never
    raised.
    """
    report = VerificationReport(m=g.m)
    if g.m == 0:
        report.errors["input"] = "empty product"
        return report
    caps = {"naive": naive_cap, "dp": dp_cap, "oracle": WORD_BITS}
    pieces = dominoes_from_graph(g)
    scale = count_placement_orders(g.m)
    for name in ("oracle", "dp", "naive"):
        if g.m > caps[name]:
            report.skipped[name] = f"m={g.m} exceeds cap {caps[name]}"
            continue
        report.engines.append(name)
        try:
            if name == "oracle":
                report.tables[name] = oracle_table(g)
                continue
            raw = raw_symmetrization(pieces, name, cap=caps[name], workers=workers)
            report.divisibility[name] = all(c % scale == 0 and c >= 0 for c in raw.values())
            report.tables[name] = table_from_coefficients(raw, g.m)
        except DominoError as exc:
            report.errors[name] = str(exc)
    names = list(report.tables)
    for name in names[1:]:
        diff = _first_difference(names[0], report.tables[names[0]], name, report.tables[name])
        if diff:
            report.mismatch = diff
            break
    return report
