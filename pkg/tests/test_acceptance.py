"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest verdicts.
"""

import math
import time

import numpy as np
import pytest

from conftest import seeded
from opradius import bounds, extremal, linalg
from opradius.cli import main, random_test
from opradius.radii import numerical_radius, rho_radius, sphere_maximize

NS_NORM = (12, 20, 28, 36)
NS_CERT = (12, 20, 28, 36, 52)


def report(num, ok, name, detail=""):
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}  {name}"
    if detail:
        line += f"  ({detail})"
    print(line)
    return ok


@pytest.fixture(scope="module")
def families():
    return {n: extremal.build(n) for n in NS_CERT}


def test_criterion_01_norm_identity(families):
    t0 = time.perf_counter()
    worst = 0.0
    for n in NS_NORM:
        target = 1.0 + 1.0 / (8.0 * math.sqrt(n))
        worst = max(worst, abs(linalg.singular_values(families[n].A)[0] - target))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 10.0
    assert report(1, ok, "extremal norm identity",
                  f"worst |norm - target| = {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_radius_bounds(families):
    worst = -np.inf
    for n in NS_NORM:
        cos_bound = 1.0 / math.cos(math.pi / n)
        w = numerical_radius(families[n].A, tol=1e-9).value
        w_inv = numerical_radius(linalg.inverse(families[n].A), tol=1e-9).value
        worst = max(worst, w - cos_bound, w_inv - cos_bound)
    ok = worst <= 1e-8
    assert report(2, ok, "extremal radius within polygon bound",
                  f"worst excess = {worst:.2e}")


def test_criterion_03_rotation_symmetry(families):
    worst = max(extremal.check_symmetry(families[n]) for n in NS_NORM)
    ok = worst <= 1e-13
    assert report(3, ok, "rotation symmetry residual", f"max residual = {worst:.2e}")


def test_criterion_04_proof_certificates(families):
    failures = []
    for n in NS_CERT:
        for rep in (extremal.certificate_31(families[n]),
                    extremal.certificate_32(families[n])):
            failures += [f"n={n}:{rep.label}.{name}" for name in rep.failures()]
    ok = not failures
    assert report(4, ok, "proof certificates for n in {12,20,28,36,52}",
                  "all checks" if ok else "; ".join(failures))


def test_criterion_05_quartic_scaling_slope():
    t0 = time.perf_counter()
    table = extremal.scaling_experiment(1, 18)
    elapsed = time.perf_counter() - t0
    ok = 0.22 <= table.slope <= 0.28 and elapsed < 120.0
    assert report(5, ok, "norm-excess exponent over k = 1..18",
                  f"slope = {table.slope:.6f}, {elapsed:.1f}s")


def test_criterion_06_crossover_constant():
    root = bounds.crossover_radius()
    ok = abs(root - 1.0290855) <= 1e-6
    assert report(6, ok, "psi_upper = 2r crossover", f"root = {root:.9f}")


def test_criterion_07_witness_tightness():
    w, value = bounds.lower_witness(1.25)
    west = numerical_radius(w, tol=1e-10)
    norm = linalg.singular_values(w)[0]
    rep = bounds.midpoint_certificate(w)
    ok = (abs(west.value - 1.25) <= 1e-9
          and abs(norm - 2.0) <= 1e-12
          and value == 2.0
          and abs(rep.bound - rep.norm_a) <= 1e-12)
    assert report(7, ok, "2x2 witness tightness",
                  f"w = {west.value:.12f}, norm = {norm:.15f}, "
                  f"midpoint slack = {rep.slack:.2e}")


def test_criterion_08_randomized_bound_suite():
    details = []
    ok = True
    for rho in (1.0, 1.5, 2.0):
        summary = random_test(2, 8, 500, rho, seed=7)
        ok = ok and summary.violations == 0 and summary.gap_violations == 0
        details.append(f"rho={rho}: {summary.violations}+{summary.gap_violations} "
                       f"violations, max ratio {summary.max_ratio:.4f}")
    assert report(8, ok, "randomized norm/gap bound suite (500 per rho)",
                  "; ".join(details))


def test_criterion_09_radius_oracle_equivalence():
    worst = 0.0
    for i in range(100):
        rng = seeded(20260810, i)
        dim = int(rng.integers(2, 7))
        a = (rng.standard_normal((dim, dim))
             + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2 * dim)
        sweep = numerical_radius(a, tol=1e-8).value
        direct, _ = sphere_maximize(a, 2.0, restarts=32, seed=900 + i)
        worst = max(worst, abs(sweep - direct))
    nil = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    nil_worst = max(abs(rho_radius(nil, rho).value - 1.0 / rho)
                    for rho in (1.0, 1.25, 1.5, 1.75, 2.0))
    ok = worst <= 1e-6 and nil_worst <= 1e-6
    assert report(9, ok, "theta sweep vs sphere maximization",
                  f"worst gap = {worst:.2e}, nilpotent grid err = {nil_worst:.2e}")


def test_criterion_10_determinism(tmp_path):
    first = tmp_path / "run1.csv"
    second = tmp_path / "run2.csv"
    args = ["extremal", "scaling", "--kmin", "1", "--kmax", "10", "--seed", "7"]
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    ok = first.read_bytes() == second.read_bytes()
    assert report(10, ok, "byte-identical scaling CSV across reruns",
                  f"{len(first.read_bytes())} bytes")
