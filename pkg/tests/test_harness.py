import json

import pytest

from adet.configuration import from_aprime
from adet.harness import (ABSORPTION, LEMMA, ORACLE, PROPOSITION, DimensionTooLarge, VerificationPlan,
                          draw_samples, normalized_volume, run_lemma_check, run_oracle_consistency,
                          run_proposition_check, run_verification, run_volume_diagnostic, subseed, triangulate)


def test_empty_plan(quadratic):
    report = run_verification(VerificationPlan(quadratic, n_random=0, n_stratum_per_face=0))
    assert report.ok and report.samples == 0 and report.total_checks == 0


def test_plan_validation(quadratic):
    with pytest.raises(ValueError):
        VerificationPlan(quadratic, n_random=-1)
    with pytest.raises(ValueError):
        VerificationPlan(quadratic, bound=0)


def test_lemma_small_run(quadratic):
    report = run_lemma_check(VerificationPlan(quadratic, n_random=40, n_stratum_per_face=10))
    assert report.ok and report.counters[LEMMA] == {"passed": 70, "failed": 0}


def test_injected_bug_is_caught_on_every_stratum_sample(quadratic):
    plan = VerificationPlan(quadratic, n_random=5, n_stratum_per_face=4, inject_bug=True)
    report = run_verification(plan)
    stratum_failures = [f for f in report.failures if f["check"] == LEMMA and f["kind"] == "stratum"]
    assert len(stratum_failures) == 4 * 3
    assert report.counters[LEMMA]["passed"] == 0
    # the other checks still use the true verdict
    assert report.counters[ORACLE]["failed"] == 0 and report.counters[PROPOSITION]["failed"] == 0
    record = stratum_failures[0]
    assert set(record) >= {"alpha", "face", "sample", "in_vA", "finite"}


def test_proposition_and_absorption(segment2, square):
    report = run_proposition_check(VerificationPlan(segment2, n_random=10, n_stratum_per_face=50))
    assert report.ok and report.counters[ABSORPTION] == {"passed": 50, "failed": 0}
    full = [s for s in draw_samples(VerificationPlan(segment2, n_random=0, n_stratum_per_face=5))
            if len(s.face) == 2]
    assert all(s.alpha == (0, 0) for s in full)
    report = run_proposition_check(VerificationPlan(square, n_random=0, n_stratum_per_face=10))
    assert report.ok and report.counters[ABSORPTION]["passed"] == 40


def test_oracle_consistency(quadratic):
    report = run_oracle_consistency(VerificationPlan(quadratic, n_random=10, n_stratum_per_face=3))
    assert report.ok and report.counters[ORACLE]["passed"] == 19


def test_determinism_including_parallel(square):
    plan = VerificationPlan(square, n_random=12, n_stratum_per_face=2, seed=5)
    first = json.dumps(run_verification(plan).to_json(), sort_keys=True)
    again = json.dumps(run_verification(plan).to_json(), sort_keys=True)
    parallel = json.dumps(run_verification(VerificationPlan(square, n_random=12, n_stratum_per_face=2, seed=5,
                                                            jobs=2)).to_json(), sort_keys=True)
    assert first == again == parallel
    other = json.dumps(run_verification(VerificationPlan(square, n_random=12, n_stratum_per_face=2,
                                                         seed=6)).to_json(), sort_keys=True)
    assert other != first


def test_subseeds_are_stable():
    assert subseed(42, "random", 0) == subseed(42, "random", 0)
    assert subseed(42, "random", 0) != subseed(42, "random", 1)


def test_normalized_volumes(bundled):
    assert {name: normalized_volume(A) for name, A in bundled.items()} == {
        "segment2": 1, "quadratic": 2, "square": 2, "twisted_cubic": 3}
    assert len(triangulate(bundled["square"])) == 2


def test_volume_of_lattice_triangle_and_guard():
    tri = from_aprime([(0, 0), (2, 0), (0, 3)])
    assert normalized_volume(tri) == 6
    big = from_aprime([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    with pytest.raises(DimensionTooLarge):
        normalized_volume(big)


def test_volume_diagnostic(quadratic):
    vol, mismatches = run_volume_diagnostic(VerificationPlan(quadratic), count=5)
    assert vol == 2 and mismatches == []
