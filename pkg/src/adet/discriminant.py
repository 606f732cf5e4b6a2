"""Membership in V(A) two ways, face discriminants and the zero set of E_A.

``vA_membership`` looks for torus critical points of every face polynomial;
``finiteness_test`` asks whether R / (x_i d_i f) is finite dimensional.
The two must agree for every coefficient vector.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .configuration import Face, PointConfiguration, face_lattice, face_polynomial, resolve_face, x_ring
from .exact import rational_row_reduce
from .groebner import Ideal, eliminate, is_proper, zero_dim_report
from .polynomials import GREVLEX, Polynomial, Ring
from .toric import CAP_HIT, HilbertProfile, hilbert_quotient_profile, toric_ideal, z_ring

LIMIT_ENV = "ADET_SYMBOLIC_LIMIT"
DEFAULT_LIMIT = 10
INFINITE_CAP = 25

HYPERSURFACE = "hypersurface"
NOT_HYPERSURFACE = "not_hypersurface"


class InconsistentOracles(RuntimeError):
    """Groebner and Hilbert-function verdicts disagree (an implementation bug)."""

    code = "InconsistentOracles"


class VariableLimitExceeded(RuntimeError):
    code = "VariableLimitExceeded"


class DimBoundViolation(RuntimeError):
    code = "DimBoundViolation"


@dataclass(frozen=True)
class MembershipVerdict:
    in_vA: bool
    witness_faces: Tuple[Face, ...]


@dataclass(frozen=True)
class FinitenessReport:
    finite: bool
    dimension: Optional[int] = None
    profile: Optional[HilbertProfile] = None


@dataclass(frozen=True)
class FaceDiscriminant:
    face: Face
    status: str
    delta: Optional[Polynomial] = None
    ideal: Tuple[Polynomial, ...] = ()

    @property
    def is_hypersurface(self) -> bool:
        return self.status == HYPERSURFACE


@dataclass(frozen=True)
class EASupport:
    ring: Ring
    entries: Tuple[Tuple[Face, Polynomial], ...]
    not_hypersurface: Tuple[FaceDiscriminant, ...]

    @property
    def polynomials(self) -> Tuple[Polynomial, ...]:
        out: List[Polynomial] = []
        for _, delta in self.entries:
            if delta not in out:
                out.append(delta)
        return tuple(out)


def _alpha(A: PointConfiguration, alpha: Sequence) -> Tuple[Fraction, ...]:
    alpha = tuple(Fraction(a) for a in alpha)
    if len(alpha) != A.d:
        raise ValueError(f"alpha has {len(alpha)} entries, configuration has {A.d} points")
    return alpha


def critical_ring(A: PointConfiguration, face: Optional[Face] = None) -> Ring:
    extra = ("w",) + (A.alpha_names(face.indices) if face is not None else ())
    return x_ring(A, extra)


def face_critical_system(A: PointConfiguration, face, alpha: Optional[Sequence] = None) -> Ideal:
    """(x_i d_i f^F for i = 1..k) + (w x_1...x_k - 1); zero generators dropped.

    With ``alpha=None`` the coefficients stay symbolic (variables a_i).
    """
    F = resolve_face(A, face)
    if alpha is None:
        ring = critical_ring(A, F)
    else:
        alpha = _alpha(A, alpha)
        ring = critical_ring(A)
    f = face_polynomial(A, F, alpha, ring=ring)
    gens = [f.euler_derivative(i) for i in range(A.k)]
    torus = ring.var("w")
    for name in A.x_names():
        torus = torus * ring.var(name)
    return Ideal(ring, gens + [torus - 1])


def nabla_membership(A: PointConfiguration, face, alpha: Sequence) -> bool:
    """Does f^F have a critical point on the torus at these coefficients?"""
    return is_proper(face_critical_system(A, face, alpha))


def vA_membership(A: PointConfiguration, alpha: Sequence) -> MembershipVerdict:
    alpha = _alpha(A, alpha)
    witnesses = tuple(F for F in face_lattice(A) if nabla_membership(A, F, alpha))
    return MembershipVerdict(bool(witnesses), witnesses)


def euler_operator_ideal(A: PointConfiguration, alpha: Sequence) -> Ideal:
    """I_A + (lambda_1..lambda_k), lambda_i = sum_j (a_j)_i alpha_j z_j."""
    alpha = _alpha(A, alpha)
    ring = z_ring(A)
    lams = []
    for i in range(A.k):
        lam = ring.zero()
        for j in range(A.d):
            c = A.points[j][i] * alpha[j]
            if c:
                lam = lam + ring.var(j) * c
        lams.append(lam)
    return Ideal(ring, toric_ideal(A).generators + tuple(lams))


def finiteness_test(A: PointConfiguration, alpha: Sequence, cross_check: bool = True,
                    infinite_cap: int = INFINITE_CAP) -> FinitenessReport:
    """Is R finite over Q[y_1..y_k] via y_i -> x_i d_i f?

    Decided by zero-dimensionality of the Euler-operator ideal; with
    ``cross_check`` the degreewise Hilbert function is computed too and any
    disagreement raises :class:`InconsistentOracles`.
    """
    alpha = _alpha(A, alpha)
    report = zero_dim_report(euler_operator_ideal(A, alpha))
    if not cross_check:
        return FinitenessReport(report.finite, report.dimension)
    cap = report.dimension + 2 if report.finite else infinite_cap
    profile = hilbert_quotient_profile(A, alpha, cap)
    if report.finite:
        if not profile.reached_zero() or profile.total != report.dimension:
            raise InconsistentOracles(
                f"Groebner dimension {report.dimension} but Hilbert profile {profile.dims} at alpha={alpha}")
    elif profile.status != CAP_HIT:
        raise InconsistentOracles(f"Groebner says infinite but Hilbert profile {profile.dims} terminates")
    return FinitenessReport(report.finite, report.dimension, profile)


def symbolic_limit() -> int:
    raw = os.environ.get(LIMIT_ENV)
    return int(raw) if raw else DEFAULT_LIMIT


def _univariate_gcd(f: List[Fraction], g: List[Fraction]) -> List[Fraction]:
    """gcd of dense coefficient lists (constant term first)."""
    def strip(p):
        while p and p[-1] == 0:
            p = p[:-1]
        return p

    f, g = strip(list(f)), strip(list(g))
    while g:
        r = list(f)
        while len(r) >= len(g) and r:
            q = r[-1] / g[-1]
            shift = len(r) - len(g)
            for i, c in enumerate(g):
                r[shift + i] -= q * c
            r = strip(r)
        f, g = g, r
    return f


def is_squarefree(p: Polynomial, attempts: int = 8, seed: int = 0) -> bool:
    """Certify that ``p`` has no repeated factor.

    For each variable v, the other variables are specialized to small
    rationals; if the resulting univariate polynomial keeps its v-degree and
    is coprime to its derivative, no repeated factor of p involves v.
    Returns False when no certificate was found.
    """
    if p.is_constant():
        return True
    rng = random.Random(seed)
    names = p.variables()
    for v in names:
        vi = p.ring.index(v)
        deg = max(m[vi] for m in p.terms)
        others = [n for n in names if n != v]
        for _ in range(attempts):
            point = {n: Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for n in others}
            restricted = p.substitute(point)
            coeffs = [Fraction(0)] * (deg + 1)
            for m, c in restricted.terms.items():
                coeffs[m[vi]] += c
            if coeffs[deg] == 0:
                continue
            deriv = [i * c for i, c in enumerate(coeffs)][1:]
            if len(_univariate_gcd(coeffs, deriv)) == 1:
                break
        else:
            return False
    return True


def face_discriminant_symbolic(A: PointConfiguration, face, limit: Optional[int] = None) -> FaceDiscriminant:
    """Eliminate x and w from the symbolic critical system of f^F."""
    F = resolve_face(A, face)
    limit = symbolic_limit() if limit is None else limit
    nvars = len(F) + A.k + 1
    if nvars > limit:
        raise VariableLimitExceeded(f"face {list(F.label)} needs {nvars} variables (limit {limit})")
    system = face_critical_system(A, F)
    _, gens = eliminate(system, A.x_names() + ("w",))
    ring = Ring(A.alpha_names(F.indices))
    gens = tuple(g.to_ring(ring) for g in gens)
    if not gens:
        raise DimBoundViolation(f"elimination ideal of face {list(F.label)} is zero")
    if len(gens) == 1 and not gens[0].is_constant():
        return FaceDiscriminant(F, HYPERSURFACE, gens[0].primitive(GREVLEX))
    gens = sorted((g.primitive(GREVLEX) for g in gens),
                  key=lambda g: GREVLEX.key(g.leading_monomial(GREVLEX)), reverse=True)
    return FaceDiscriminant(F, NOT_HYPERSURFACE, None, tuple(gens))


def alpha_ring(A: PointConfiguration) -> Ring:
    return Ring(A.alpha_names())


@lru_cache(maxsize=32)
def _support_cached(A: PointConfiguration, limit: int) -> EASupport:
    ring = alpha_ring(A)
    entries = []
    others = []
    for F in face_lattice(A):
        fd = face_discriminant_symbolic(A, F, limit)
        if fd.is_hypersurface:
            entries.append((F, fd.delta.to_ring(ring)))
        else:
            others.append(fd)
    return EASupport(ring, tuple(entries), tuple(others))


def eA_support(A: PointConfiguration, limit: Optional[int] = None) -> EASupport:
    return _support_cached(A, symbolic_limit() if limit is None else limit)


def eA_vanishes(A: PointConfiguration, alpha: Sequence, support: Optional[EASupport] = None) -> bool:
    alpha = _alpha(A, alpha)
    support = eA_support(A) if support is None else support
    point = dict(zip(A.alpha_names(), alpha))
    return any(delta.evaluate(point) == 0 for delta in support.polynomials)


def _random_rational(rng: random.Random, bound: int, nonzero: bool = False) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if num or not nonzero:
            return Fraction(num, rng.randint(1, bound))


def critical_matrix(A: PointConfiguration, face, u: Sequence) -> List[List[Fraction]]:
    """Rows i, columns j in F: (a_j)_i * u^{a_j}; its kernel is nabla_F over u."""
    F = resolve_face(A, face)
    u = [Fraction(x) for x in u]
    cols = []
    for j in F.indices:
        val = Fraction(1)
        for x, e in zip(u, A.points[j]):
            val *= x ** e
        cols.append([A.points[j][i] * val for i in range(A.k)])
    return [[col[i] for col in cols] for i in range(A.k)]


def sample_nabla_point(A: PointConfiguration, face, seed, bound: int = 10,
                       u: Optional[Sequence] = None) -> Tuple[Fraction, ...]:
    """Exact point of p_F^{-1}(nabla_F) built around a torus point u.

    ``u`` is drawn from ``seed`` unless given.  The result always has a
    critical point of f^F at u.
    """
    F = resolve_face(A, face)
    rng = random.Random(seed)
    if u is None:
        u = []
        for _ in range(A.k):
            x = Fraction(rng.randint(1, bound), rng.randint(1, bound))
            u.append(-x if rng.random() < 0.5 else x)
    _, null = rational_row_reduce(critical_matrix(A, F, u), len(F))
    alpha_F = [Fraction(0)] * len(F)
    for vec in null:
        c = _random_rational(rng, bound, nonzero=True)
        alpha_F = [a + c * v for a, v in zip(alpha_F, vec)]
    out = []
    pos = {j: t for t, j in enumerate(F.indices)}
    for i in range(A.d):
        out.append(alpha_F[pos[i]] if i in pos else _random_rational(rng, bound))
    return tuple(out)
