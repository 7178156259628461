"""Exact arithmetic on symmetric matrices written in the basis of symmetrized units.

A symmetrized unit ``e(i, j)`` is ``E_ij + E_ji`` for ``i != j`` and ``E_ii`` on
the diagonal, where ``E_ij`` is the ordinary matrix unit. The bullet product is
the unnormalized Jordan product ``A . B = AB + BA``; it is commutative but not
associative, so products of several factors are always nested from the left.

Two engines evaluate the symmetrization polynomial (the sum of left-nested
products over every ordering of the factors):

* :func:`symmetrize_naive` walks all ``m!`` orderings.
* :func:`symmetrize_dp` runs a subset recursion over bitmasks, one popcount
  layer at a time.
"""

from __future__ import annotations

import math
import operator
from collections.abc import Iterable, Iterator, Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceededError, EmptyProductError

NAIVE_CAP = 9
DP_CAP = 22

# rough per-subset footprint of one live dict-of-coefficients entry in the DP
_BYTES_PER_STATE = 400


def check_label(value) -> int:
    """Return ``value`` as a label, or raise ``ValueError``."""
    if isinstance(value, bool):
        raise ValueError(f"label must be a nonnegative integer, got {value!r}")
    try:
        value = operator.index(value)
    except TypeError:
        raise ValueError(f"label must be a nonnegative integer, got {value!r}") from None
    if value < 0:
        raise ValueError(f"label must be nonnegative, got {value}")
    return value


@dataclass(frozen=True, order=True)
class BasisElement:
    """Unordered pair of labels; ``BasisElement(2, 1) == BasisElement(1, 2)``."""

    lo: int
    hi: int

    def __post_init__(self):
        lo, hi = check_label(self.lo), check_label(self.hi)
        if lo > hi:
            lo, hi = hi, lo
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def is_diagonal(self) -> bool:
        return self.lo == self.hi

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __repr__(self):
        return f"e({self.lo},{self.hi})"


def as_basis(obj) -> BasisElement:
    if isinstance(obj, BasisElement):
        return obj
    i, j = obj
    return BasisElement(i, j)


class SymMatrix(Mapping):
    """Immutable, finitely supported integer combination of basis elements.

    Zero coefficients are never stored, so ``len`` is the size of the support
    and two matrices compare equal exactly when their coefficients agree.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[BasisElement, int] = {}
        for key, c in items:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"coefficients must be integers, got {c!r}")
            key = as_basis(key)
            acc[key] = acc.get(key, 0) + c
        self._coeffs = {k: acc[k] for k in sorted(acc) if acc[k] != 0}

    @classmethod
    def basis(cls, i: int, j: int) -> SymMatrix:
        return cls({BasisElement(i, j): 1})

    @classmethod
    def zero(cls) -> SymMatrix:
        return cls()

    def __getitem__(self, key):
        return self._coeffs[as_basis(key)]

    def get(self, key, default=0):
        return self._coeffs.get(as_basis(key), default)

    def __iter__(self) -> Iterator[BasisElement]:
        return iter(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __contains__(self, key):
        try:
            return as_basis(key) in self._coeffs
        except (TypeError, ValueError):
            return False

    def __eq__(self, other):
        if isinstance(other, SymMatrix):
            return self._coeffs == other._coeffs
        if isinstance(other, int) and not isinstance(other, bool) and other == 0:
            return not self._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        acc = dict(self._coeffs)
        for k, c in other._coeffs.items():
            acc[k] = acc.get(k, 0) + c
        return SymMatrix(acc)

    def __neg__(self):
        return SymMatrix({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, bool) or not isinstance(scalar, int):
            return NotImplemented
        return SymMatrix({k: scalar * c for k, c in self._coeffs.items()})

    __rmul__ = __mul__

    def labels(self) -> list[int]:
        return sorted({x for k in self._coeffs for x in k})

    def to_dense(self, labels: list[int] | None = None) -> list[list[int]]:
        """Dense symmetric matrix with rows/columns ordered by ``labels``."""
        labels = self.labels() if labels is None else list(labels)
        pos = {lab: n for n, lab in enumerate(labels)}
        out = [[0] * len(labels) for _ in labels]
        for k, c in self._coeffs.items():
            i, j = pos[k.lo], pos[k.hi]
            out[i][j] += c
            if i != j:
                out[j][i] += c
        return out

    def __repr__(self):
        if not self._coeffs:
            return "SymMatrix(0)"
        terms = " + ".join(f"{c}*{k!r}" for k, c in self._coeffs.items())
        return f"SymMatrix({terms})"


def _units(i, j):
    return ((i, j),) if i == j else ((i, j), (j, i))


@lru_cache(maxsize=None)
def _basis_product(i: int, j: int, k: int, l: int) -> tuple[tuple[tuple[int, int], int], ...]:
    # AB + BA on matrix units, read back in the symmetrized basis
    dense: dict[tuple[int, int], int] = {}
    for a, b in _units(i, j):
        for c, d in _units(k, l):
            if b == c:
                dense[a, d] = dense.get((a, d), 0) + 1
            if d == a:
                dense[c, b] = dense.get((c, b), 0) + 1
    return tuple(sorted((pq, v) for pq, v in dense.items() if pq[0] <= pq[1]))


def bullet_basis(a, b) -> SymMatrix:
    """Bullet product of two basis elements.

    >>> bullet_basis((1, 2), (1, 3))
    SymMatrix(1*e(2,3))
    >>> bullet_basis((1, 2), (1, 2))
    SymMatrix(2*e(1,1) + 2*e(2,2))
    """
    a, b = as_basis(a), as_basis(b)
    return SymMatrix(_basis_product(a.lo, a.hi, b.lo, b.hi))


def bullet(a: SymMatrix, b: SymMatrix) -> SymMatrix:
    acc: dict[tuple[int, int], int] = {}
    for x, cx in a.items():
        for y, cy in b.items():
            for pq, f in _basis_product(x.lo, x.hi, y.lo, y.hi):
                acc[pq] = acc.get(pq, 0) + cx * cy * f
    return SymMatrix(acc)


def left_nested_product(seq) -> SymMatrix:
    seq = [as_basis(x) for x in seq]
    if not seq:
        raise EmptyProductError()
    out = SymMatrix.basis(seq[0].lo, seq[0].hi)
    for x in seq[1:]:
        out = bullet(out, SymMatrix.basis(x.lo, x.hi))
    return out


class _DenseFrame:
    """Labels remapped to ``0..n-1``; pairs coded as ``i * n + j`` with ``i <= j``."""

    def __init__(self, faces: list[BasisElement]):
        self.labels = sorted({x for f in faces for x in f})
        self.n = len(self.labels)
        self.index = {lab: t for t, lab in enumerate(self.labels)}
        self.faces = [self.code(self.index[f.lo], self.index[f.hi]) for f in faces]
        self._table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    def code(self, i, j):
        return i * self.n + j if i <= j else j * self.n + i

    def product(self, p: int, q: int) -> tuple[tuple[int, int], ...]:
        key = (p, q)
        hit = self._table.get(key)
        if hit is None:
            n = self.n
            i, j = divmod(p, n)
            k, l = divmod(q, n)
            # _basis_product is label-generic, so dense indices work directly
            hit = tuple((self.code(*pq), f) for pq, f in _basis_product(i, j, k, l))
            self._table[key] = hit
        return hit

    def times(self, vec: dict[int, int], face: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for p, c in vec.items():
            for q, f in self.product(p, face):
                out[q] = out.get(q, 0) + c * f
        return {q: c for q, c in out.items() if c}

    def to_matrix(self, vec: dict[int, int]) -> SymMatrix:
        lab, n = self.labels, self.n
        return SymMatrix({BasisElement(lab[p // n], lab[p % n]): c for p, c in vec.items()})


def _prepare(pieces, cap: int, engine: str) -> list[BasisElement]:
    faces = [as_basis(x) for x in pieces]
    m = len(faces)
    if m == 0:
        raise EmptyProductError()
    if m > cap:
        if engine == "naive":
            raise CapExceededError(
                f"naive engine cap exceeded, use dp engine (m={m} > cap={cap})"
            )
        raise CapExceededError(
            f"dp engine cap exceeded (m={m} > cap={cap}); "
            f"estimated peak memory ~{_format_bytes(estimate_dp_bytes(m))}"
        )
    return faces


def estimate_dp_bytes(m: int) -> int:
    """Upper estimate of the DP peak: two adjacent middle layers kept alive."""
    return 2 * math.comb(m, m // 2) * _BYTES_PER_STATE


def _format_bytes(n: int) -> str:
    for unit in ("B", "KiB", "MiB", "GiB"):
        if n < 1024:
            return f"{n:.0f} {unit}"
        n /= 1024
    return f"{n:.1f} TiB"


def symmetrize_naive(pieces, cap: int = NAIVE_CAP, stats: dict | None = None) -> SymMatrix:
    """Sum of left-nested bullet products over all orderings of ``pieces``.

    Orderings sharing a prefix share its partial product, but every one of the
    ``m!`` orderings still contributes its own term.
    """
    faces = _prepare(pieces, cap, "naive")
    frame = _DenseFrame(faces)
    m = len(faces)
    total: dict[int, int] = {}
    visited = 0

    def walk(vec, used):
        nonlocal visited
        visited += 1
        if used == (1 << m) - 1:
            for q, c in vec.items():
                total[q] = total.get(q, 0) + c
            return
        for k in range(m):
            if not used >> k & 1:
                walk(frame.times(vec, frame.faces[k]), used | 1 << k)

    for k in range(m):
        walk({frame.faces[k]: 1}, 1 << k)
    if stats is not None:
        stats["peak_states"] = visited
    return frame.to_matrix({q: c for q, c in total.items() if c})


def _dp_layers(frame: _DenseFrame, workers: int = 1) -> Iterator[dict[int, dict[int, int]]]:
    m = len(frame.faces)
    layer = {1 << k: {frame.faces[k]: 1} for k in range(m)}
    yield layer
    for _ in range(1, m):
        if workers > 1 and len(layer) > 1:
            items = list(layer.items())
            size = -(-len(items) // workers)
            chunks = [items[s:s + size] for s in range(0, len(items), size)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(lambda ch: _push(frame, ch, m), chunks))
            nxt: dict[int, dict[int, int]] = {}
            for part in parts:
                _merge(nxt, part)
        else:
            nxt = _push(frame, layer.items(), m)
        layer = {mask: vec for mask, vec in nxt.items() if vec}
        yield layer


def _push(frame, items, m):
    nxt: dict[int, dict[int, int]] = {}
    faces = frame.faces
    for mask, vec in items:
        for k in range(m):
            if mask >> k & 1:
                continue
            prod = frame.times(vec, faces[k])
            if not prod:
                continue
            dst = nxt.setdefault(mask | 1 << k, {})
            for q, c in prod.items():
                dst[q] = dst.get(q, 0) + c
    return nxt


def _merge(into, part):
    for mask, vec in part.items():
        dst = into.setdefault(mask, {})
        for q, c in vec.items():
            dst[q] = dst.get(q, 0) + c


def symmetrize_dp(pieces, cap: int = DP_CAP, workers: int = 1, stats: dict | None = None) -> SymMatrix:
    """Symmetrization polynomial via the subset recursion.

    ``T({k}) = e_k`` and ``T(S) = sum over k in S of T(S - {k}) . e_k``; the
    result is ``T`` of the full index set. Only two popcount layers are alive
    at any time. ``workers > 1`` splits each layer across threads; the result
    does not depend on it.
    """
    faces = _prepare(pieces, cap, "dp")
    frame = _DenseFrame(faces)
    full = (1 << len(faces)) - 1
    peak = prev = 0
    last: dict[int, dict[int, int]] = {}
    for last in _dp_layers(frame, workers):
        peak = max(peak, prev + len(last))
        prev = len(last)
    if stats is not None:
        stats["peak_states"] = peak
    return frame.to_matrix(last.get(full, {}))


def subset_products(pieces, cap: int = DP_CAP) -> Iterator[dict[int, SymMatrix]]:
    """Yield the DP values layer by layer as ``{bitmask: T(S)}``.

    Bit ``k`` of a mask stands for ``pieces[k]``. Subsets whose value is zero
    are left out.
    """
    frame = _DenseFrame(_prepare(pieces, cap, "dp"))
    for layer in _dp_layers(frame):
        yield {mask: frame.to_matrix(vec) for mask, vec in layer.items()}
