"""Seeded verification campaigns over a point configuration.

Every sample is a coefficient vector alpha: either uniformly random with
bounded numerators and denominators, or drawn from the stratum of one face
(so the member side of each equivalence is exercised).  Each sample gets
its own sub-seed, so results do not depend on evaluation order and the
report is reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .configuration import Face, PointConfiguration, face_lattice
from .discriminant import (DEFAULT_LIMIT, INFINITE_CAP, EASupport, eA_support, finiteness_test,
                           sample_nabla_point, vA_membership)
from .toric import CAP_HIT, hilbert_quotient_profile, vanishing_window

LEMMA = "lemma"
PROPOSITION = "proposition"
ABSORPTION = "absorption"
ORACLE = "oracle"
ALL_CHECKS = (LEMMA, PROPOSITION, ABSORPTION, ORACLE)


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class VerificationPlan:
    config: PointConfiguration
    n_random: int = 200
    n_stratum_per_face: int = 50
    seed: int = 42
    bound: int = 10
    infinite_cap: int = INFINITE_CAP
    window: int = 5
    jobs: int = 1
    inject_bug: bool = False
    symbolic_limit: int = DEFAULT_LIMIT

    def __post_init__(self):
        if self.n_random < 0 or self.n_stratum_per_face < 0:
            raise ValueError("sample counts must be nonnegative")
        if self.bound < 1:
            raise ValueError("coefficient bound must be >= 1")

    def to_json(self) -> dict:
        return {
            "n_random": self.n_random,
            "n_stratum_per_face": self.n_stratum_per_face,
            "seed": self.seed,
            "bound": self.bound,
            "infinite_cap": self.infinite_cap,
            "window": self.window,
            "inject_bug": self.inject_bug,
        }


@dataclass(frozen=True)
class Sample:
    index: int
    kind: str  # "random" | "stratum"
    face: Optional[Face]
    alpha: Tuple[Fraction, ...]


@dataclass
class VerificationReport:
    config: PointConfiguration
    plan: VerificationPlan
    checks: Tuple[str, ...]
    counters: Dict[str, Dict[str, int]]
    failures: List[dict]
    samples: int
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total_checks(self) -> int:
        return sum(c["passed"] + c["failed"] for c in self.counters.values())

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "config": {"name": self.config.name, "points": [list(p) for p in self.config.points]},
            "plan": self.plan.to_json(),
            "seed": self.plan.seed,
            "samples": self.samples,
            "checks": {name: dict(self.counters[name]) for name in self.checks},
            "failures": self.failures,
            "ok": self.ok,
        }
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def subseed(seed: int, *parts) -> int:
    text = ":".join(str(p) for p in (seed,) + parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def random_alpha(d: int, rng: random.Random, bound: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(d))


def draw_samples(plan: VerificationPlan) -> List[Sample]:
    A = plan.config
    out: List[Sample] = []
    for i in range(plan.n_random):
        rng = random.Random(subseed(plan.seed, "random", i))
        out.append(Sample(len(out), "random", None, random_alpha(A.d, rng, plan.bound)))
    for fpos, F in enumerate(face_lattice(A)):
        for i in range(plan.n_stratum_per_face):
            alpha = sample_nabla_point(A, F, subseed(plan.seed, "stratum", fpos, i), plan.bound)
            out.append(Sample(len(out), "stratum", F, alpha))
    return out


def _alpha_json(alpha: Sequence[Fraction]) -> List[str]:
    return [str(a) for a in alpha]


def _evaluate(A: PointConfiguration, support: Optional[EASupport], not_hyp: frozenset,
              plan: VerificationPlan, checks: Tuple[str, ...], sample: Sample) -> Tuple[int, Dict[str, bool], dict]:
    """All checks for one sample: (index, {check: passed}, record)."""
    alpha = sample.alpha
    need_member = LEMMA in checks or PROPOSITION in checks or ABSORPTION in checks
    need_finite = LEMMA in checks or ORACLE in checks
    record: dict = {
        "sample": sample.index,
        "kind": sample.kind,
        "face": list(sample.face.label) if sample.face is not None else None,
        "alpha": _alpha_json(alpha),
    }
    results: Dict[str, bool] = {}
    in_vA = None
    if need_member:
        verdict = vA_membership(A, alpha)
        in_vA = verdict.in_vA
        record["in_vA"] = in_vA
        record["witnesses"] = [list(F.label) for F in verdict.witness_faces]
    if need_finite:
        fin = finiteness_test(A, alpha, cross_check=False)
        finite = true_finite = fin.finite
        if plan.inject_bug:
            finite = not finite
        record["finite"] = finite
        record["dimension"] = fin.dimension
    if LEMMA in checks:
        results[LEMMA] = in_vA == (not finite)
    if PROPOSITION in checks or ABSORPTION in checks:
        point = dict(zip(A.alpha_names(), alpha))
        vanishes = any(delta.evaluate(point) == 0 for delta in support.polynomials)
        record["eA_vanishes"] = vanishes
        if PROPOSITION in checks:
            results[PROPOSITION] = vanishes == in_vA
        if ABSORPTION in checks and sample.kind == "stratum" and sample.face.indices in not_hyp:
            results[ABSORPTION] = vanishes
    if ORACLE in checks:
        if true_finite:
            dim = record["dimension"]
            prof = hilbert_quotient_profile(A, alpha, dim + 2)
            window = vanishing_window(A, alpha, prof.at, plan.window) if prof.reached_zero() else None
            ok = (prof.reached_zero() and prof.total == dim and window is not None and not any(window))
            record["window"] = list(window) if window is not None else None
        else:
            prof = hilbert_quotient_profile(A, alpha, plan.infinite_cap)
            ok = prof.status == CAP_HIT and all(x > 0 for x in prof.dims)
        record["profile"] = prof.to_json()
        results[ORACLE] = ok
    return sample.index, results, record


def _evaluate_packed(args):
    return _evaluate(*args)


def _run(plan: VerificationPlan, checks: Tuple[str, ...]) -> VerificationReport:
    A = plan.config
    timings: Dict[str, float] = {}
    t0 = time.perf_counter()
    support = None
    not_hyp: frozenset = frozenset()
    if PROPOSITION in checks or ABSORPTION in checks:
        support = eA_support(A, plan.symbolic_limit)
        not_hyp = frozenset(fd.face.indices for fd in support.not_hypersurface)
    timings["symbolic"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    samples = draw_samples(plan)
    timings["sampling"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    tasks = [(A, support, not_hyp, plan, checks, s) for s in samples]
    if plan.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=plan.jobs) as pool:
            results = list(pool.map(_evaluate_packed, tasks, chunksize=max(1, len(tasks) // (4 * plan.jobs))))
    else:
        results = [_evaluate(*t) for t in tasks]
    timings["checks"] = time.perf_counter() - t0
    results.sort(key=lambda r: r[0])
    counters = {name: {"passed": 0, "failed": 0} for name in checks}
    failures = []
    for _, res, record in results:
        for name in checks:
            if name not in res:
                continue
            if res[name]:
                counters[name]["passed"] += 1
            else:
                counters[name]["failed"] += 1
                failures.append(dict(record, check=name))
    return VerificationReport(A, plan, checks, counters, failures, len(samples), timings)


def run_lemma_check(plan: VerificationPlan) -> VerificationReport:
    """Torus critical points exist on some face iff the Euler map is not finite."""
    return _run(plan, (LEMMA,))


def run_proposition_check(plan: VerificationPlan) -> VerificationReport:
    """E_A vanishes exactly on V(A); strata of non-hypersurface faces included."""
    return _run(plan, (PROPOSITION, ABSORPTION))


def run_oracle_consistency(plan: VerificationPlan) -> VerificationReport:
    """Groebner quotient dimension against the degreewise Hilbert function."""
    return _run(plan, (ORACLE,))


def run_verification(plan: VerificationPlan, checks: Sequence[str] = ALL_CHECKS) -> VerificationReport:
    return _run(plan, tuple(c for c in ALL_CHECKS if c in checks))


# --- volume diagnostic ------------------------------------------------------


def _det(rows: List[List[int]]) -> int:
    """Bareiss fraction-free determinant."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for i in range(n - 1):
        if M[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if M[r][i] != 0), None)
            if swap is None:
                return 0
            M[i], M[swap] = M[swap], M[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                M[r][c] = (M[r][c] * M[i][i] - M[r][i] * M[i][c]) // prev
        prev = M[i][i]
    return sign * M[n - 1][n - 1]


def triangulate(A: PointConfiguration, face: Optional[Face] = None) -> List[Tuple[int, ...]]:
    """Pulling triangulation of a face from its smallest-index vertex."""
    lattice = face_lattice(A)
    face = lattice.polytope if face is None else face
    if face.dim == 0:
        return [(face.indices[0],)]
    subs = lattice.subfaces(face)
    apex = min(v.indices[0] for v in subs if v.dim == 0)
    out = []
    for H in subs:
        if H.dim == face.dim - 1 and apex not in H.indices:
            for simplex in triangulate(A, H):
                out.append(simplex + (apex,))
    return out


def normalized_volume(A: PointConfiguration, max_dim: int = 3) -> int:
    """Lattice volume of P (unit simplex = 1): sum of |det| over a triangulation."""
    m = A.k - 1
    if m > max_dim:
        raise DimensionTooLarge(f"polytope dimension {m} exceeds {max_dim}")
    if m == 0:
        return 1
    pts = A.aprime
    total = 0
    for simplex in triangulate(A):
        base = pts[simplex[0]]
        total += abs(_det([[a - b for a, b in zip(pts[j], base)] for j in simplex[1:]]))
    return total


def run_volume_diagnostic(plan: VerificationPlan, count: int = 20) -> Tuple[int, List[dict]]:
    """Finiteness dimension vs normalized volume on random non-members.

    Meaningful only for normal configurations; returns (volume, mismatches).
    """
    A = plan.config
    vol = normalized_volume(A)
    mismatches = []
    found = 0
    i = 0
    while found < count:
        rng = random.Random(subseed(plan.seed, "volume", i))
        i += 1
        alpha = random_alpha(A.d, rng, plan.bound)
        if vA_membership(A, alpha).in_vA:
            continue
        found += 1
        dim = finiteness_test(A, alpha).dimension
        if dim != vol:
            mismatches.append({"alpha": _alpha_json(alpha), "dimension": dim, "volume": vol})
    return vol, mismatches
