"""Exact integer and rational linear algebra.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are canonical by construction, so no extra wrapper types are needed.
Matrices are plain row-major sequences of rows.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

IntVector = Tuple[int, ...]
RatVector = Tuple[Fraction, ...]


def _check_rectangular(M: Sequence[Sequence], cols: int | None = None) -> int:
    if cols is None:
        cols = len(M[0]) if M else 0
    for r, row in enumerate(M):
        if len(row) != cols:
            raise ValueError(f"row {r} has {len(row)} entries, expected {cols}")
    return cols


def hermite_rows(vectors: Iterable[Sequence[int]]) -> List[IntVector]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Only integer row operations are used, so the returned rows span the
    same lattice.  Zero rows are dropped, pivots are positive and every
    entry above a pivot is reduced into ``[0, pivot)``.
    """
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    ncols = _check_rectangular(rows)
    out: List[List[int]] = []
    pivots: List[int] = []
    for c in range(ncols):
        active = [r for r in rows if r[c] != 0]
        if not active:
            continue
        rest = [r for r in rows if r[c] == 0]
        # Euclid on column c among the active rows.
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[c] // p[c]
                r = [a - q * b for a, b in zip(r, p)]
                if r[c] != 0:
                    nxt.append(r)
                else:
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        for prev in out:
            q = prev[c] // piv[c]
            if q:
                prev[:] = [a - q * b for a, b in zip(prev, piv)]
        out.append(piv)
        pivots.append(c)
        rows = [r for r in rest if any(r)]
    return [tuple(r) for r in out]


def integer_kernel_basis(M: Sequence[Sequence[int]], cols: int | None = None) -> List[IntVector]:
    """Basis of the lattice ``{v in Z^cols : M v = 0}``.

    Column reduction of ``M`` tracked by a unimodular transform: the rows
    of ``[M^T | I]`` are put in Hermite form and those whose ``M^T`` part
    vanishes span the kernel.  The kernel basis is itself returned in
    Hermite form, so the first nonzero entry of every vector is positive.
    """
    ncols = _check_rectangular(M, cols)
    if not M:
        if cols is None:
            raise ValueError("cannot infer column count of an empty matrix")
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    nrows = len(M)
    aug = [[int(M[r][c]) for r in range(nrows)] + [int(i == c) for i in range(ncols)] for c in range(ncols)]
    reduced = hermite_rows(aug)
    kernel = [row[nrows:] for row in reduced if not any(row[:nrows])]
    return hermite_rows(kernel)


def rational_row_reduce(M: Sequence[Sequence], cols: int | None = None) -> Tuple[int, List[RatVector]]:
    """Rank and nullspace of a rational matrix via reduced row echelon form.

    Nullspace vectors have a 1 in their free coordinate and 0 in the other
    free coordinates, listed in increasing order of the free column.
    """
    ncols = _check_rectangular(M, cols)
    A = [[Fraction(x) for x in row] for row in M]
    pivot_cols: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivot_cols]
    nullspace = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(A, pivot_cols):
            v[pc] = -row[fc]
        nullspace.append(tuple(v))
    return len(pivot_cols), nullspace


def solve_rational(M: Sequence[Sequence], b: Sequence) -> RatVector | None:
    """One rational solution of ``M x = b``, or None if inconsistent."""
    ncols = _check_rectangular(M)
    aug = [list(row) + [rhs] for row, rhs in zip(M, b)]
    rank, null = rational_row_reduce(aug, ncols + 1)
    # a solution exists iff some nullspace vector has last coordinate != 0
    for v in null:
        if v[-1] != 0:
            s = -1 / v[-1]
            return tuple(x * s for x in v[:-1])
    return None


class Echelon:
    """Incremental sparse echelon form over the rationals.

    Rows are ``{column: Fraction}`` dicts.  Each stored row has leading
    (smallest) column equal to its pivot and leading coefficient 1.
    """

    __slots__ = ("pivots",)

    def __init__(self) -> None:
        self.pivots: Dict[int, Dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Dict[int, Fraction]) -> Dict[int, Fraction]:
        """Fully reduce ``row`` against the stored pivots; returns a new dict."""
        row = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            f = row.pop(c, None)
            if f is None:
                continue
            for cc, v in pivots[c].items():
                if cc == c:
                    continue
                nv = row.get(cc, 0) - f * v
                if nv:
                    if cc not in row and cc in pivots:
                        heapq.heappush(heap, cc)
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        return row

    def add(self, row: Dict[int, Fraction]) -> bool:
        """Insert ``row``; returns True iff it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = 1 / row[lead]
        self.pivots[lead] = {c: v * inv for c, v in row.items()}
        return True


def rank(rows: Iterable[Dict[int, Fraction]]) -> int:
    """Exact rank of a sparse rational matrix given as column->value dicts."""
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return len(ech)


def primitive(values: Sequence[Fraction]) -> Tuple[int, ...]:
    """Integer-primitive multiple of a rational vector (first nonzero positive)."""
    den = 1
    for v in values:
        den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)
