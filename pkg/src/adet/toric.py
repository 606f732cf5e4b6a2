"""The toric ideal I_A, graded pieces of the semigroup ring R and the
degreewise Hilbert function of R / (x_i d_i f).

R is presented as Q[z_1..z_d]/I_A with z_i -> x^{a_i}.  It is graded by
the last coordinate, so R_n has the n-fold sums of the points as basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .configuration import Face, PointConfiguration
from .exact import Echelon, integer_kernel_basis, rank
from .groebner import Ideal, saturate_by_product
from .polynomials import GREVLEX, Polynomial, Ring

try:  # C rationals for the quotient walk; results are plain ints either way
    from gmpy2 import mpq as _field
except ImportError:  # pragma: no cover
    _field = Fraction

REACHED_ZERO = "reached_zero"
CAP_HIT = "cap_hit"


class ZeroTorusCoordinate(ValueError):
    pass


@dataclass(frozen=True)
class ToricIdeal:
    ring: Ring
    generators: Tuple[Polynomial, ...]
    lattice: Tuple[Tuple[int, ...], ...]

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)


@dataclass(frozen=True)
class HilbertProfile:
    """dims[n] = dim of degree-n piece for n = 0..len(dims)-1."""

    dims: Tuple[int, ...]
    status: str
    at: Optional[int] = None

    @property
    def total(self) -> int:
        return sum(self.dims)

    def reached_zero(self) -> bool:
        return self.status == REACHED_ZERO

    def to_json(self) -> dict:
        out = {"dims": list(self.dims), "status": self.status}
        if self.at is not None:
            out["at"] = self.at
        return out


def z_ring(A: PointConfiguration) -> Ring:
    return Ring(A.z_names())


def binomial(ring: Ring, u: Sequence[int]) -> Polynomial:
    plus = [max(x, 0) for x in u]
    minus = [max(-x, 0) for x in u]
    return ring.monomial(plus) - ring.monomial(minus)


@lru_cache(maxsize=64)
def toric_ideal(A: PointConfiguration) -> ToricIdeal:
    """Lattice-kernel binomials saturated by z_1 ... z_d (reduced grevlex GB)."""
    ring = z_ring(A)
    lattice = tuple(integer_kernel_basis(A.matrix, A.d))
    if not lattice:
        return ToricIdeal(ring, (), ())
    lattice_ideal = Ideal(ring, [binomial(ring, u) for u in lattice])
    sat = saturate_by_product(lattice_ideal, ring.names)
    gens = tuple(g.primitive(GREVLEX) for g in sat.generators)
    return ToricIdeal(ring, gens, lattice)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


@lru_cache(maxsize=256)
def semigroup_degree_basis(A: PointConfiguration, n: int) -> Tuple[Tuple[int, ...], ...]:
    """Distinct n-fold sums of the points, sorted lexicographically."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return ((0,) * A.k,)
    prev = semigroup_degree_basis(A, n - 1)
    return tuple(sorted({_add(b, a) for b in prev for a in A.points}))


def orbit_point(A: PointConfiguration, indices, u: Sequence) -> Tuple[Fraction, ...]:
    """z_i = u^{a_i} for i in ``indices`` and 0 otherwise.

    ``indices`` need not be a face (the non-face case is how the toric
    ideal is seen to cut out exactly the orbit closures).
    """
    idx = set(indices.indices if isinstance(indices, Face) else indices)
    u = [Fraction(x) for x in u]
    if len(u) != A.k:
        raise ValueError(f"torus point needs {A.k} coordinates")
    if any(x == 0 for x in u):
        raise ZeroTorusCoordinate("torus coordinates must be nonzero")
    out = []
    for i, a in enumerate(A.points):
        if i in idx:
            v = Fraction(1)
            for x, e in zip(u, a):
                v *= x ** e
            out.append(v)
        else:
            out.append(Fraction(0))
    return tuple(out)


def euler_images(A: PointConfiguration, alpha: Sequence, field=Fraction) -> List[Dict[int, Fraction]]:
    """x_i d_i f as vectors in R_1 (the point basis, in input order)."""
    alpha = [field(Fraction(a)) for a in alpha]
    rows = []
    for i in range(A.k):
        rows.append({j: A.points[j][i] * alpha[j] for j in range(A.d) if A.points[j][i] * alpha[j]})
    return rows


def quotient_dimension_direct(A: PointConfiguration, alpha: Sequence, n: int) -> int:
    """dim R_n / sum_i g_i R_{n-1} by the rank of the full image matrix."""
    basis = semigroup_degree_basis(A, n)
    if n == 0:
        return 1
    index = {b: t for t, b in enumerate(basis)}
    prev = semigroup_degree_basis(A, n - 1)
    rows = []
    for g in euler_images(A, alpha):
        for c in prev:
            row: Dict[int, Fraction] = {}
            for j, v in g.items():
                col = index[_add(c, A.points[j])]
                row[col] = row.get(col, 0) + v
            rows.append(row)
    return len(basis) - rank(rows)


class _QuotientWalker:
    """Degree-by-degree normal forms in R/(g_1..g_k).

    For n >= 2 the image J_n equals R_1 * J_{n-1}, hence
    (R/J)_n = (R_1 (x) (R/J)_{n-1}) / (multiplication relations); that
    space has dimension d * dim (R/J)_{n-1}, which keeps the linear algebra
    tiny even when dim R_n is large.
    """

    def __init__(self, A: PointConfiguration, alpha: Sequence):
        self.A = A
        self.n = 0
        # normal form of each basis monomial of the current degree, as
        # {coordinate: value} over a basis of the quotient piece
        self.nf: Dict[Tuple[int, ...], Dict[int, Fraction]] = {(0,) * A.k: {0: _field(1)}}
        self.dim = 1
        self.alpha = alpha

    def step(self) -> int:
        A = self.A
        d = A.d
        ech = Echelon()
        if self.n == 0:
            for g in euler_images(A, self.alpha, _field):
                ech.add(g)
            first = {A.points[j]: {j: _field(1)} for j in range(d)}
            total = d
        else:
            D = self.dim
            total = d * D
            first: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
            for c, vec in self.nf.items():
                for j, a in enumerate(A.points):
                    b = _add(c, a)
                    lifted = {j * D + s: v for s, v in vec.items()}
                    rep = first.get(b)
                    if rep is None:
                        first[b] = lifted
                    elif len(ech) < total:
                        diff = dict(rep)
                        for key, v in lifted.items():
                            diff[key] = diff.get(key, 0) - v
                        ech.add(diff)
        free = [col for col in range(total) if col not in ech.pivots]
        pos = {col: t for t, col in enumerate(free)}
        self.nf = {b: {pos[col]: v for col, v in ech.reduce(rep).items()} for b, rep in first.items()}
        self.dim = len(free)
        self.n += 1
        return self.dim


def hilbert_quotient_profile(A: PointConfiguration, alpha: Sequence, cap: int,
                             method: str = "quotient") -> HilbertProfile:
    """Dimensions of (R / sum_i g_i R)_n for n = 0, 1, ... up to ``cap``.

    Stops at the first zero: R is generated in degree 1, so a zero piece
    forces every later piece to vanish.  ``method="direct"`` ranks the full
    image matrix in every degree instead of walking the quotient.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    alpha = [Fraction(a) for a in alpha]
    if len(alpha) != A.d:
        raise ValueError(f"alpha needs {A.d} entries")
    dims = [1]
    if method == "direct":
        for n in range(1, cap + 1):
            dims.append(quotient_dimension_direct(A, alpha, n))
            if dims[-1] == 0:
                return HilbertProfile(tuple(dims), REACHED_ZERO, n)
        return HilbertProfile(tuple(dims), CAP_HIT)
    if method != "quotient":
        raise ValueError(f"unknown method {method!r}")
    walker = _QuotientWalker(A, alpha)
    for n in range(1, cap + 1):
        dims.append(walker.step())
        if dims[-1] == 0:
            return HilbertProfile(tuple(dims), REACHED_ZERO, n)
    return HilbertProfile(tuple(dims), CAP_HIT)


def vanishing_window(A: PointConfiguration, alpha: Sequence, start: int, length: int = 5) -> Tuple[int, ...]:
    """Direct quotient dimensions in degrees start+1 .. start+length."""
    return tuple(quotient_dimension_direct(A, alpha, n) for n in range(start + 1, start + length + 1))
