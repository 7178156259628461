"""Domino pieces, trains, and train counting.

A train places every piece exactly once so that touching faces carry the same
number. Counts are directed: the table entry for ``{i, j}`` is the number of
trains that start at ``i`` and end at ``j``, which by reversal equals the count
from ``j`` to ``i``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CapExceededError, InvariantViolation
from .symalg import (
    DP_CAP,
    NAIVE_CAP,
    BasisElement,
    SymMatrix,
    as_basis,
    symmetrize_dp,
    symmetrize_naive,
)

ENUM_CAP = 10


@dataclass(frozen=True)
class Piece:
    face: BasisElement
    copy_id: int = 0


@dataclass(frozen=True)
class PieceList:
    """Ordered pieces; repeated faces are told apart by ``copy_id``."""

    pieces: tuple[Piece, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        seen: dict[BasisElement, int] = {}
        for p in self.pieces:
            expected = seen.get(p.face, 0)
            if p.copy_id != expected:
                raise ValueError(
                    f"copy ids of {p.face!r} must run 0, 1, ... in order; got {p.copy_id}"
                )
            seen[p.face] = expected + 1

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> PieceList:
        counts: dict[BasisElement, int] = {}
        out = []
        for pair in pairs:
            face = as_basis(pair)
            out.append(Piece(face, counts.get(face, 0)))
            counts[face] = counts.get(face, 0) + 1
        return cls(tuple(out))

    @property
    def faces(self) -> list[BasisElement]:
        return [p.face for p in self.pieces]

    def labels(self) -> list[int]:
        return sorted({x for p in self.pieces for x in p.face})

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __getitem__(self, idx):
        return self.pieces[idx]


def as_piece_list(pieces) -> PieceList:
    if isinstance(pieces, PieceList):
        return pieces
    return PieceList.from_pairs(pieces)


class Step(NamedTuple):
    index: int
    forward: bool = True


@dataclass(frozen=True)
class TrainSequence:
    """Placement order of pieces; a forward step walks ``face.lo -> face.hi``."""

    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Step(int(i), bool(f)) for i, f in self.steps))

    def vertices(self, pieces: PieceList) -> list[int]:
        """The induced vertex sequence ``v0 ... vm`` (assumes a valid train)."""
        out: list[int] = []
        for idx, fwd in self.steps:
            face = pieces[idx].face
            a, b = (face.lo, face.hi) if fwd else (face.hi, face.lo)
            if not out:
                out.append(a)
            out.append(b)
        return out

    def reversed(self) -> TrainSequence:
        return TrainSequence(tuple(Step(i, not f) for i, f in reversed(self.steps)))

    def __len__(self):
        return len(self.steps)


class CountTable(Mapping):
    """Symmetric map ``{i, j} -> count``; only nonzero counts are stored."""

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping | Iterable = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        acc: dict[BasisElement, int] = {}
        for key, c in items:
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise ValueError(f"counts must be nonnegative integers, got {c!r}")
            key = as_basis(key)
            if key in acc and acc[key] != c:
                raise ValueError(f"conflicting counts for {key!r}")
            acc[key] = c
        self._counts = {k: acc[k] for k in sorted(acc) if acc[k]}

    def __getitem__(self, key):
        return self._counts[as_basis(key)]

    def get(self, key, default=0):
        return self._counts.get(as_basis(key), default)

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def __eq__(self, other):
        if isinstance(other, CountTable):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def records(self) -> list[tuple[int, int, int]]:
        """``(start, end, count)`` rows sorted by ``(start, end)``, ``start <= end``."""
        return [(k.lo, k.hi, c) for k, c in self._counts.items()]

    def total(self) -> int:
        """Sum of the stored entries, one per unordered pair."""
        return sum(self._counts.values())

    def total_directed(self) -> int:
        """Number of directed trains: off-diagonal entries count both directions."""
        return sum(c if k.is_diagonal else 2 * c for k, c in self._counts.items())

    def __repr__(self):
        body = ", ".join(f"{k.lo}-{k.hi}: {c}" for k, c in self._counts.items())
        return f"CountTable({{{body}}})"


def is_train(pieces, steps) -> bool:
    pieces = as_piece_list(pieces)
    if not isinstance(steps, TrainSequence):
        steps = TrainSequence(tuple(steps))
    m = len(pieces)
    for idx, _ in steps.steps:
        if not 0 <= idx < m:
            raise IndexError(f"piece index {idx} out of range for {m} pieces")
    if sorted(i for i, _ in steps.steps) != list(range(m)):
        return False
    prev = None
    for idx, fwd in steps.steps:
        face = pieces[idx].face
        a, b = (face.lo, face.hi) if fwd else (face.hi, face.lo)
        if prev is not None and a != prev:
            return False
        prev = b
    return True


def count_placement_orders(n: int) -> int:
    """Ways to build a fixed train of ``n`` pieces by adding at either end."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return 1 << (n - 1)


def raw_symmetrization(pieces, engine: str = "dp", cap: int | None = None, workers: int = 1) -> SymMatrix:
    faces = as_piece_list(pieces).faces
    if engine == "naive":
        return symmetrize_naive(faces, cap=NAIVE_CAP if cap is None else cap)
    if engine == "dp":
        return symmetrize_dp(faces, cap=DP_CAP if cap is None else cap, workers=workers)
    raise ValueError(f"unknown engine {engine!r}; expected 'naive' or 'dp'")


def table_from_coefficients(coeffs: SymMatrix, m: int) -> CountTable:
    """Divide every coefficient by ``2**(m-1)``; raise if any is not divisible."""
    scale = count_placement_orders(m)
    out = {}
    for key, alpha in coeffs.items():
        q, r = divmod(alpha, scale)
        if r or q < 0:
            raise InvariantViolation(
                f"coefficient {alpha} of {key!r} is not a nonnegative multiple of 2^{m - 1}"
            )
        out[key] = q
    return CountTable(out)


def count_trains(pieces, engine: str = "dp", cap: int | None = None, workers: int = 1) -> CountTable:
    pieces = as_piece_list(pieces)
    raw = raw_symmetrization(pieces, engine, cap=cap, workers=workers)
    return table_from_coefficients(raw, len(pieces))


def enumerate_trains(pieces, start: int | None = None, end: int | None = None,
                     limit: int | None = None, cap: int = ENUM_CAP) -> list[TrainSequence]:
    """All trains, ordered by piece-index sequence and then orientation bits.

    A double has a single orientation (``forward``); flipping it gives the
    same physical placement.
    """
    pieces = as_piece_list(pieces)
    m = len(pieces)
    if m > cap:
        raise CapExceededError(f"enumeration cap exceeded (m={m} > cap={cap})")
    if m == 0:
        return []
    ends = [(p.face.lo, p.face.hi) for p in pieces]
    found: list[tuple[Step, ...]] = []
    path: list[Step] = []
    full = (1 << m) - 1

    def extend(used, at):
        if used == full:
            if end is None or at == end:
                found.append(tuple(path))
            return
        for k in range(m):
            if used >> k & 1:
                continue
            lo, hi = ends[k]
            if lo == at:
                path.append(Step(k, True))
                extend(used | 1 << k, hi)
                path.pop()
            if hi == at and lo != hi:
                path.append(Step(k, False))
                extend(used | 1 << k, lo)
                path.pop()

    for k, (lo, hi) in enumerate(ends):
        orientations = [(True, lo, hi)] if lo == hi else [(True, lo, hi), (False, hi, lo)]
        for fwd, a, b in orientations:
            if start is not None and a != start:
                continue
            path.append(Step(k, fwd))
            extend(1 << k, b)
            path.pop()

    found.sort(key=lambda steps: ([i for i, _ in steps], [not f for _, f in steps]))
    if limit is not None:
        found = found[:limit]
    return [TrainSequence(s) for s in found]
