"""Direct combinatorial counters for eulerian paths.

Nothing here touches the matrix algebra. These functions are the reference
the algebraic engines are checked against.
"""

from __future__ import annotations

import sys

from .errors import CapExceededError
from .graph import Multigraph

WORD_BITS = 64
ENUM_CAP = 10


def _incidence(g: Multigraph) -> dict[int, list[tuple[int, int]]]:
    # vertex -> [(edge bit, other endpoint)], a loop is listed once
    inc: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for k, e in enumerate(g.edges):
        inc[e.lo].append((1 << k, e.hi))
        if e.lo != e.hi:
            inc[e.hi].append((1 << k, e.lo))
    return inc


def _check_width(g: Multigraph):
    if g.m > WORD_BITS:
        raise CapExceededError(f"trail DP supports at most {WORD_BITS} edges, got {g.m}")


def _completions(g: Multigraph, end: int, memo: dict):
    """Return ``f(used, v)``: ways to finish from ``v`` at ``end`` using the unused edges."""
    inc = _incidence(g)
    full = (1 << g.m) - 1

    def f(used, v):
        if used == full:
            return 1 if v == end else 0
        key = (used, v)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        for bit, w in inc[v]:
            if not used & bit:
                total += f(used | bit, w)
        memo[key] = total
        return total

    return f


def _ensure_recursion(m):
    need = m + 100
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def count_trails_dp(g: Multigraph, start: int, end: int, stats: dict | None = None) -> int:
    """Number of directed edge sequences from ``start`` to ``end`` using every edge once.

    Memoized on ``(used edge bitmask, current vertex)``. Parallel edges count
    separately; a loop uses one edge and stays put.
    """
    for v in (start, end):
        if v not in g.vertices:
            raise ValueError(f"vertex {v} is not in the graph")
    _check_width(g)
    _ensure_recursion(g.m)
    memo: dict = {}
    result = _completions(g, end, memo)(0, start)
    if stats is not None:
        stats["peak_states"] = len(memo)
    return result


def trail_count_table(g: Multigraph, stats: dict | None = None) -> dict[tuple[int, int], int]:
    """Nonzero counts for every ordered ``(start, end)`` pair."""
    _check_width(g)
    _ensure_recursion(g.m)
    out = {}
    states = 0
    if g.m == 0:
        return out
    for end in sorted(g.vertices):
        memo: dict = {}
        f = _completions(g, end, memo)
        for start in sorted(g.vertices):
            c = f(0, start)
            if c:
                out[start, end] = c
        states = max(states, len(memo))
    if stats is not None:
        stats["peak_states"] = states
    return out


def enumerate_eulerian_paths(g: Multigraph, start: int | None = None,
                             limit: int | None = None, cap: int = ENUM_CAP) -> list[list[int]]:
    """Every eulerian path as a vertex list, found by plain backtracking.

    Paths are ordered by the sequence of edge indices taken, ties (the same
    edge sequence walked from either end) broken by start vertex.
    """
    if g.m > cap:
        raise CapExceededError(f"enumeration cap exceeded (m={g.m} > cap={cap})")
    if g.m == 0:
        return []
    if start is not None and start not in g.vertices:
        raise ValueError(f"vertex {start} is not in the graph")
    inc = _incidence(g)
    for v in inc:
        inc[v].sort()
    full = (1 << g.m) - 1
    found = []
    edge_seq: list[int] = []
    verts: list[int] = []

    def walk(used, v):
        if used == full:
            found.append((tuple(edge_seq), verts[0], list(verts)))
            return
        for bit, w in inc[v]:
            if used & bit:
                continue
            edge_seq.append(bit.bit_length() - 1)
            verts.append(w)
            walk(used | bit, w)
            verts.pop()
            edge_seq.pop()

    starts = sorted(g.vertices) if start is None else [start]
    for s in starts:
        verts.append(s)
        walk(0, s)
        verts.pop()
    found.sort(key=lambda t: (t[0], t[1]))
    paths = [p for _, _, p in found]
    return paths if limit is None else paths[:limit]
