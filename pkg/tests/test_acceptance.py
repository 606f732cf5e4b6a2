"""Acceptance gate.  Each criterion prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s``.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from adet.configuration import face_lattice
from adet.discriminant import _support_cached, eA_support
from adet.harness import (ABSORPTION, LEMMA, ORACLE, PROPOSITION, VerificationPlan, run_verification,
                          run_volume_diagnostic, subseed)
from adet.toric import orbit_point, toric_ideal

from conftest import configs

NAMES = ("segment2", "quadratic", "twisted_cubic", "square")


def report_line(request, number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    with request.config.pluginmanager.get_plugin("capturemanager").global_and_fixture_disabled():
        print("\n" + line)
    assert ok, line


@pytest.fixture(scope="module")
def campaigns():
    """The default plan (200 random + 50 per face, seed 42) on every bundled config."""
    out = {}
    for name in NAMES:
        start = time.perf_counter()
        report = run_verification(VerificationPlan(configs()[name]))
        out[name] = (report, time.perf_counter() - start)
    return out


def test_criterion_1_lemma_equivalence(request, campaigns):
    total = sum(t for _, t in campaigns.values())
    failed = sum(r.counters[LEMMA]["failed"] for r, _ in campaigns.values())
    checked = sum(r.counters[LEMMA]["passed"] for r, _ in campaigns.values()) + failed
    expected = sum(200 + 50 * len(face_lattice(configs()[n])) for n in NAMES)
    ok = failed == 0 and checked == expected and total < 300
    report_line(request, 1, ok, f"{checked - failed}/{checked} samples agree, full campaign {total:.1f}s (< 300s)")


def test_criterion_2_proposition_pointwise(request, campaigns):
    failed = sum(r.counters[PROPOSITION]["failed"] + r.counters[ABSORPTION]["failed"] for r, _ in campaigns.values())
    absorbed = {n: campaigns[n][0].counters[ABSORPTION]["passed"] for n in NAMES}
    # square: 4 edges, segment2: the full face; 50 samples each
    ok = failed == 0 and absorbed == {"segment2": 50, "quadratic": 0, "twisted_cubic": 0, "square": 200}
    report_line(request, 2, ok, f"{failed} failures; absorbed non-hypersurface strata samples {absorbed}")


def _resultant_factor(degree):
    a = sympy.symbols(f"a1:{degree + 2}")
    t = sympy.Symbol("t")
    f = sum(c * t ** i for i, c in enumerate(a))
    return sympy.Poly(sympy.cancel(sympy.resultant(f, sympy.diff(f, t), t) / a[-1]), *a).primitive()[1]


def _normalized(p, gens):
    P = sympy.Poly(sympy.sympify(p.to_str().replace("^", "**")), *gens).primitive()[1]
    return P if P.LC() > 0 else -P


def test_criterion_3_supports_match_oracles(request):
    a = sympy.symbols("a1:5")
    oracles = {
        "quadratic": {a[0], a[2], _resultant_factor(2).as_expr()},
        "twisted_cubic": {a[0], a[3], _resultant_factor(3).as_expr()},
        "square": {a[0], a[1], a[2], a[3], a[0] * a[3] - a[1] * a[2]},
    }
    details, ok = [], True
    for name, oracle in oracles.items():
        A = configs()[name]
        _support_cached.cache_clear()
        start = time.perf_counter()
        sup = eA_support(A)
        elapsed = time.perf_counter() - start
        gens = sympy.symbols(A.alpha_names())
        ours = {_normalized(p, gens) for p in sup.polynomials}
        theirs = set()
        for q in oracle:
            Q = sympy.Poly(q, *gens).primitive()[1]
            theirs.add(Q if Q.LC() > 0 else -Q)
        good = ours == theirs and elapsed < 120
        ok &= good
        details.append(f"{name} {'ok' if good else 'MISMATCH'} {elapsed:.2f}s")
    report_line(request, 3, ok, "; ".join(details))


def test_criterion_4_oracle_equivalence(request, campaigns):
    failed = sum(r.counters[ORACLE]["failed"] for r, _ in campaigns.values())
    checked = sum(r.counters[ORACLE]["passed"] for r, _ in campaigns.values()) + failed
    report_line(request, 4, failed == 0 and checked > 0,
                f"{checked - failed}/{checked} samples: GB dimension = profile sum with 5-degree window, "
                f"or profile positive through 25")


def test_criterion_5_orbit_consistency(request):
    bad, faces_checked, nonfaces_checked = [], 0, 0
    for name in NAMES:
        A = configs()[name]
        gens = toric_ideal(A).generators

        def values(z):
            return [g.evaluate(dict(zip(g.ring.names, z))) for g in gens]

        for pos, F in enumerate(face_lattice(A)):
            for i in range(10):
                rng = random.Random(subseed(42, "orbit", name, pos, i))
                u = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9)) for _ in range(A.k)]
                faces_checked += 1
                if any(values(orbit_point(A, F, u))):
                    bad.append((name, F.label, u))
        faces = {F.indices for F in face_lattice(A)}
        nonfaces = [S for r in range(1, A.d + 1) for S in combinations(range(A.d), r) if S not in faces]
        rng = random.Random(subseed(42, "nonface", name))
        for S in rng.sample(nonfaces, min(5, len(nonfaces))):
            u = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(A.k)]
            nonfaces_checked += 1
            if not any(values(orbit_point(A, S, u))):
                bad.append((name, S, u))
    report_line(request, 5, not bad,
                f"{faces_checked} face orbit points vanish, {nonfaces_checked} non-face points violate; "
                f"{len(bad)} exceptions")


def test_criterion_6_volume_diagnostic(request):
    expected = {"quadratic": 2, "square": 2, "twisted_cubic": 3}
    found, mism = {}, 0
    for name in expected:
        vol, mismatches = run_volume_diagnostic(VerificationPlan(configs()[name]), count=20)
        found[name] = vol
        mism += len(mismatches)
    report_line(request, 6, found == expected and mism == 0,
                f"volumes {found}, {mism} dimension mismatches over 60 non-members")


def _cli_verify(name, *extra):
    proc = subprocess.run([sys.executable, "-m", "adet", "verify", "--config", f"builtin:{name}", "--seed", "42",
                           *extra], capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_criterion_7_determinism(request, campaigns):
    details, ok = [], True
    for name in NAMES:
        code1, serial = _cli_verify(name)
        code2, parallel = _cli_verify(name, "--jobs", "2")
        text = json.dumps(campaigns[name][0].to_json(), sort_keys=True, separators=(",", ":"))
        in_process = (text + "\n").encode()
        same = code1 == code2 == 0 and serial == parallel == in_process
        ok &= same
        details.append(f"{name} {'identical' if same else 'DIFFERENT'}")
    report_line(request, 7, ok, "three runs (in-process, CLI, CLI --jobs 2): " + ", ".join(details))
