"""Acceptance checks, one per line of output.

Every check prints a single ``PASS``/``FAIL`` line.  Cases whose literal
reference value disagrees with the operator formulas are reported by the
suites as ``conflict``; they are listed in the output line and pinned by
the strict ``xfail`` tests at the end of this file.
"""

import time

import pytest

from cuntzcar.reps import branching_number, necklace_count
from cuntzcar.suites import run_suite


@pytest.fixture(scope="module")
def full_run():
    start = time.perf_counter()
    report = run_suite("all")
    return report, time.perf_counter() - start


def cases(report, prefix):
    return [c for c in report.cases if c.id.startswith(prefix)]


def announce(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'} {title}: {detail}")


def summarize(group):
    fails = [c for c in group if c.status == "fail"]
    conflicts = [c for c in group if c.status == "conflict"]
    passed = sum(c.status == "pass" for c in group)
    text = f"{passed} cases pass, {len(fails)} fail"
    if conflicts:
        text += f", {len(conflicts)} literal-value conflicts"
    if fails:
        text += f"; first failure {fails[0].id} ({fails[0].witness})"
    return not fails and passed > 0, text


def test_relations(capsys):
    start = time.perf_counter()
    report = run_suite("relations")
    seconds = time.perf_counter() - start
    per_algebra = {d: len(cases(report, f"random/O{d}/")) for d in (2, 3, 4)}
    ok, text = summarize(report.cases)
    ok = ok and seconds < 10 and all(n == 1000 for n in per_algebra.values())
    announce(capsys, 1, "Cuntz relations", ok, f"{text}, random cases per algebra {per_algebra}, {seconds:.2f} s")
    assert ok


def test_embeddings(capsys, full_run):
    report, _ = full_run
    group = cases(report, "embeddings/")
    ok, text = summarize(group)
    kinds = {c.id.split("/")[1] for c in group}
    ok = ok and {"family", "unitary-roundtrip", "hom-hom", "embend"} <= kinds
    announce(capsys, 2, "embeddings and round trips", ok, text)
    assert ok


def test_endomorphisms(capsys, full_run):
    report, _ = full_run
    group = cases(report, "endomorphisms/")
    ok, text = summarize(group)
    ok = ok and len(cases(report, "endomorphisms/second-order/")) == 24
    announce(capsys, 3, "second-order endomorphisms and phi_sigma", ok, text)
    assert ok


def test_recursive_fermion_systems(capsys, full_run):
    report, _ = full_run
    group = cases(report, "rfs/")
    ok, text = summarize(group)
    ok = ok and len(cases(report, "rfs/u1/")) == 341 and len(cases(report, "rfs/reduction/")) == 4
    announce(capsys, 4, "recursive fermion systems", ok, text + " (u1 round trip over all 341 monomials)")
    assert ok


def test_induced_crosscheck(capsys, full_run):
    report, _ = full_run
    group = cases(report, "car/")
    ok, text = summarize(group)
    ok = ok and len(cases(report, "car/crosscheck/")) == 35
    announce(capsys, 5, "restriction versus closed forms", ok, text)
    assert ok


def test_branching(capsys, full_run):
    report, _ = full_run
    group = cases(report, "branching/")
    ok, text = summarize(group)
    numbers = [branching_number(p) for p in range(1, 5)]
    ok = ok and numbers == [2, 3, 4, 6] and necklace_count(7) == 18
    announce(capsys, 6, "branching numbers and labels", ok, f"B_p = {numbers}, C_7 = {necklace_count(7)}, {text}")
    assert ok


def test_restrictions(capsys, full_run):
    report, _ = full_run
    group = cases(report, "restrictions/")
    ok, text = summarize(group)
    announce(capsys, 7, "restricted representations", ok, text)
    assert ok


def test_kms(capsys, full_run):
    report, _ = full_run
    group = cases(report, "kms/")
    ok, text = summarize(group)
    grid = len(cases(report, "kms/kms/"))
    ok = ok and grid == 18
    announce(capsys, 8, "KMS, trace and factorization", ok, f"{grid} (beta, eps) points, {text}")
    assert ok


def test_dynamics(capsys, full_run):
    report, _ = full_run
    group = cases(report, "dynamics/")
    ok, text = summarize(group)
    announce(capsys, 9, "induced dynamics", ok, text)
    assert ok


def test_full_run_time(capsys, full_run):
    report, seconds = full_run
    ok = seconds < 300 and report.passed
    announce(capsys, 10, "run_suite all", ok, f"{len(report.cases)} cases in {seconds:.1f} s, counts {report.counts}")
    assert ok


# literal reference values that contradict the operator formulas --------------


@pytest.mark.xfail(strict=True, reason="literal example 1 particle-number table contradicts the closed form of tau_t")
def test_literal_example1_particle_numbers(full_run):
    assert not cases(full_run[0], "dynamics/N_t-literal/ex1/")


@pytest.mark.xfail(strict=True, reason="literal additivity rule of example 2 fails when 3m shares a block with one partner")
def test_literal_example2_particle_numbers(full_run):
    assert not cases(full_run[0], "dynamics/N_t-literal/ex2/")


@pytest.mark.xfail(strict=True, reason="three literal n-point formulas carry the opposite sign")
def test_literal_npoint_signs(full_run):
    assert not cases(full_run[0], "dynamics/npoint-literal/")
