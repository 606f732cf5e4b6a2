"""Point configurations with last coordinate 1 and their face lattices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .exact import integer_kernel_basis, rational_row_reduce
from .polynomials import Polynomial, Ring


class ConfigurationError(ValueError):
    """Invalid point configuration.  ``detail`` is JSON-serializable."""

    code = "ConfigurationError"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail


class EmptyConfiguration(ConfigurationError):
    code = "EmptyConfiguration"


class RaggedPoints(ConfigurationError):
    code = "RaggedPoints"


class LastCoordNotOne(ConfigurationError):
    code = "LastCoordNotOne"


class DuplicatePoint(ConfigurationError):
    code = "DuplicatePoint"


class DoesNotSpan(ConfigurationError):
    code = "DoesNotSpan"


class FaceNotInLattice(ValueError):
    code = "FaceNotInLattice"

    def __init__(self, indices):
        super().__init__(f"{sorted(i + 1 for i in indices)} is not a face")
        self.detail = {"indices": sorted(i + 1 for i in indices)}


@dataclass(frozen=True)
class PointConfiguration:
    """The points a_1..a_d in Z^k, all with last coordinate 1."""

    points: Tuple[Tuple[int, ...], ...]
    name: str = ""

    @property
    def d(self) -> int:
        return len(self.points)

    @property
    def k(self) -> int:
        return len(self.points[0])

    @property
    def n(self) -> int:
        return self.d - self.k

    @property
    def aprime(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(p[:-1] for p in self.points)

    @property
    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """k x d matrix whose columns are the points."""
        return tuple(tuple(p[i] for p in self.points) for i in range(self.k))

    @property
    def exponents(self) -> Tuple[Tuple[int, ...], ...]:
        """Points translated so every leading coordinate is >= 0.

        The translation is unimodular on Z^k (it fixes the last coordinate),
        so it changes neither critical loci on the torus nor the toric ideal;
        it only lets the face polynomials be ordinary polynomials.
        """
        shift = [min(p[i] for p in self.points) for i in range(self.k - 1)] + [0]
        return tuple(tuple(x - s for x, s in zip(p, shift)) for p in self.points)

    def alpha_names(self, indices: Optional[Iterable[int]] = None) -> Tuple[str, ...]:
        idx = range(self.d) if indices is None else sorted(indices)
        return tuple(f"a{i + 1}" for i in idx)

    def x_names(self) -> Tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.k))

    def z_names(self) -> Tuple[str, ...]:
        return tuple(f"z{i + 1}" for i in range(self.d))


def _affine_rank(pts: Sequence[Sequence[int]]) -> int:
    if len(pts) <= 1:
        return 0
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    rank, _ = rational_row_reduce(diffs, len(base))
    return rank


def validate(points: Sequence[Sequence[int]], name: str = "") -> PointConfiguration:
    """Check the input points and wrap them.  Error indices are 1-based."""
    if not points:
        raise EmptyConfiguration("configuration has no points")
    pts = []
    for i, p in enumerate(points):
        if isinstance(p, (str, bytes)) or not all(isinstance(x, int) and not isinstance(x, bool) for x in p):
            raise RaggedPoints(f"point {i + 1} is not an integer vector", index=i + 1, point=list(p))
        pts.append(tuple(p))
    k = len(pts[0])
    for i, p in enumerate(pts):
        if len(p) != k or k == 0:
            raise RaggedPoints(f"point {i + 1} has length {len(p)}, expected {k}", index=i + 1, point=list(p))
    for i, p in enumerate(pts):
        if p[-1] != 1:
            raise LastCoordNotOne(f"point {i + 1} = {list(p)} does not end in 1", index=i + 1, point=list(p))
    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            j = seen[p]
            raise DuplicatePoint(f"points {j + 1} and {i + 1} coincide", indices=[j + 1, i + 1], point=list(p))
        seen[p] = i
    rank, _ = rational_row_reduce(pts, k)
    if rank < k:
        raise DoesNotSpan(f"points span a rank-{rank} sublattice of Z^{k}", rank=rank, k=k)
    return PointConfiguration(tuple(pts), name)


def from_aprime(aprime: Sequence[Sequence[int]], name: str = "") -> PointConfiguration:
    return validate([tuple(p) + (1,) for p in aprime], name)


@dataclass(frozen=True)
class Face:
    """A nonempty face, named by the (0-based) indices of the points on it.

    ``normal``/``offset`` give a supporting functional: <normal, a'_i> equals
    ``offset`` on the face and is strictly smaller off it.  Both are None
    for the whole polytope.
    """

    indices: Tuple[int, ...]
    dim: int
    normal: Optional[Tuple[int, ...]] = None
    offset: Optional[int] = None

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    @property
    def label(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in self.indices)


@dataclass(frozen=True)
class FaceLattice:
    faces: Tuple[Face, ...]

    def __iter__(self) -> Iterator[Face]:
        return iter(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __getitem__(self, i: int) -> Face:
        return self.faces[i]

    def find(self, indices: Iterable[int]) -> Face:
        key = tuple(sorted(set(indices)))
        for f in self.faces:
            if f.indices == key:
                return f
        raise FaceNotInLattice(key)

    @property
    def polytope(self) -> Face:
        return max(self.faces, key=len)

    def vertices(self) -> Tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == 0)

    def subfaces(self, face: Face) -> Tuple[Face, ...]:
        s = set(face.indices)
        return tuple(f for f in self.faces if f is not face and set(f.indices) < s)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _facets(aprime: Sequence[Tuple[int, ...]]):
    """Supporting hyperplanes through m affinely independent points."""
    m = len(aprime[0])
    d = len(aprime)
    found = {}
    for subset in combinations(range(d), m):
        base = aprime[subset[0]]
        diffs = [[a - b for a, b in zip(aprime[j], base)] for j in subset[1:]]
        kernel = integer_kernel_basis(diffs, m) if diffs else [tuple(int(i == 0) for i in range(m))]
        if len(kernel) != 1:
            continue
        lam = kernel[0]
        vals = [_dot(lam, p) for p in aprime]
        c = vals[subset[0]]
        if all(v <= c for v in vals):
            normal, off = lam, c
        elif all(v >= c for v in vals):
            normal, off = tuple(-x for x in lam), -c
        else:
            continue
        on = tuple(i for i in range(d) if _dot(normal, aprime[i]) == off)
        if len(on) < d:
            found.setdefault(on, (normal, off))
    return found


@lru_cache(maxsize=64)
def face_lattice(A: PointConfiguration) -> FaceLattice:
    """All nonempty faces of P = conv(a'_i), including P itself.

    P is full-dimensional (the points span), so every proper face is an
    intersection of facets; its functional is the sum of theirs.
    """
    aprime = A.aprime
    d = A.d
    everything = tuple(range(d))
    if A.k == 1:
        return FaceLattice((Face(everything, 0),))
    facets = _facets(aprime)
    support = {s: [s] for s in facets}
    changed = True
    while changed:
        changed = False
        current = list(support)
        for s1, s2 in combinations(current, 2):
            inter = tuple(sorted(set(s1) & set(s2)))
            if inter and inter not in support:
                support[inter] = []
                changed = True
    faces = []
    for s in support:
        containing = [f for f in facets if set(s) <= set(f)]
        normal = tuple(sum(facets[f][0][i] for f in containing) for i in range(A.k - 1))
        off = sum(facets[f][1] for f in containing)
        faces.append(Face(s, _affine_rank([aprime[i] for i in s]), normal, off))
    faces.append(Face(everything, A.k - 1))
    faces.sort(key=lambda f: (len(f.indices), f.indices))
    return FaceLattice(tuple(faces))


def resolve_face(A: PointConfiguration, face) -> Face:
    """Accept a Face or an iterable of 0-based indices; check lattice membership."""
    lattice = face_lattice(A)
    if isinstance(face, Face):
        if face not in lattice.faces:
            raise FaceNotInLattice(face.indices)
        return face
    return lattice.find(face)


def x_ring(A: PointConfiguration, extra: Iterable[str] = ()) -> Ring:
    return Ring(A.x_names() + tuple(extra))


def face_polynomial(A: PointConfiguration, face, alpha: Optional[Sequence] = None,
                    ring: Optional[Ring] = None) -> Polynomial:
    """f^F = sum over i in F of alpha_i x^{a_i}.

    With ``alpha=None`` the coefficients are the variables ``a{i}``.  The
    ring defaults to x1..xk, followed by those variables when symbolic.
    """
    F = resolve_face(A, face)
    if ring is None:
        ring = x_ring(A, A.alpha_names(F.indices) if alpha is None else ())
    k = A.k
    expo = A.exponents
    poly = ring.zero()
    for i in F.indices:
        mono = list(expo[i]) + [0] * (ring.nvars - k)
        if alpha is None:
            term = ring.monomial(mono) * ring.var(f"a{i + 1}")
        else:
            term = ring.monomial(mono, Fraction(alpha[i]))
        poly = poly + term
    return poly
