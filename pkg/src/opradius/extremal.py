"""Construction and verification of the extremal matrix family A = D B D.

For n = 8k + 4 the family is built from
    D = diag(e^{i pi/2n}, e^{3 i pi/2n}, ..., e^{(2n-1) i pi/2n}),
    E = 0/1 symmetric band matrix, e_ij = 1 iff 3k+2 <= |i - j| <= 5k+2,
    B = I + E / (2 n^{3/2}),
    A = D B D.

The congruence n = 8k + 4 makes the band self-complementary modulo n, so E is
a circulant, every row sums to exactly n/4 = 2k + 1, and conjugation by the
shift-and-sign unitary P Delta rotates A by e^{2 i pi / n}. Consequences that
this module machine-checks:

  * ||A|| = ||B|| = 1 + 1/(8 sqrt(n))   (constant row sums, Perron-Frobenius),
  * the numerical range is invariant under rotation by 2 pi / n,
  * both Hermitian parts (A + A*)/2 and (A^-1 + (A^-1)*)/2 have norm <= 1,
    via explicit certificate matrices whose norms obey fixed rational bounds,
  * hence the numerical radii of A and A^-1 are at most 1/cos(pi/n) while the
    norm excess ||A|| - 1 = 1/(8 sqrt(n)) decays like the 1/4 power of the
    radius excess; scaling_experiment fits that exponent.
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass, replace

import numpy as np

from .linalg import as_matrix, inverse, singular_values
from .radii import numerical_radius

__all__ = [
    "ExtremalFamily",
    "SymmetryPair",
    "CertificateCheck",
    "CertificateReport",
    "ScalingRow",
    "ScalingTable",
    "build",
    "symmetry_pair",
    "check_symmetry",
    "check_norm",
    "check_real_parts",
    "certificate_31",
    "certificate_32",
    "scaling_experiment",
    "worker_count",
]

MAX_DIM = 500
# global slack for certificate pass/fail decisions
CHECK_SLACK = 1e-10


@dataclass(frozen=True)
class ExtremalFamily:
    """The construction bundle (n, k, D, E, B, A) with n = 8k + 4."""

    n: int
    k: int
    D: np.ndarray
    E: np.ndarray
    B: np.ndarray
    A: np.ndarray


@dataclass(frozen=True)
class SymmetryPair:
    """Cyclic shift P (p_ij = 1 iff i = j+1 mod n) and Delta = diag(1,...,1,-1)."""

    P: np.ndarray
    Delta: np.ndarray


@dataclass(frozen=True)
class CertificateCheck:
    name: str
    value: float
    bound: float
    passed: bool
    slack: float


@dataclass(frozen=True)
class CertificateReport:
    label: str
    n: int
    checks: tuple[CertificateCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "all_pass": bool(self.all_pass),
            "checks": [
                {"name": c.name, "value": float(c.value), "bound": float(c.bound),
                 "pass": bool(c.passed), "slack": float(c.slack)}
                for c in self.checks
            ],
        }


def _check(name: str, value: float, bound: float) -> CertificateCheck:
    value = float(value)
    bound = float(bound)
    return CertificateCheck(name, value, bound, value <= bound + CHECK_SLACK,
                            bound - value)


def _validate_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)):
        raise ValueError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < 12 or (n - 4) % 8 != 0:
        raise ValueError(f"n must be of the form 8k + 4 with k >= 1, got {n}")
    if n > MAX_DIM:
        raise ValueError(f"n is capped at {MAX_DIM}, got {n}")
    return (n - 4) // 8


def build(n: int) -> ExtremalFamily:
    """Construct the family for n = 8k + 4 and verify its exact invariants."""
    k = _validate_n(n)
    ell = np.arange(1, n + 1)
    d = np.exp(1j * np.pi * (2 * ell - 1) / (2 * n))
    dist = np.abs(np.subtract.outer(ell, ell))
    band = ((dist >= 3 * k + 2) & (dist <= 5 * k + 2)).astype(np.int64)

    row_sums = band.sum(axis=1)
    if not np.all(row_sums == n // 4):
        raise AssertionError("band row sums must equal n/4 exactly")
    if not np.array_equal(band, band.T) or np.any(np.diag(band) != 0):
        raise AssertionError("band matrix must be symmetric with zero diagonal")

    b = np.eye(n) + band / (2.0 * n ** 1.5)
    a = (d[:, None] * b) * d[None, :]
    return ExtremalFamily(n=n, k=k, D=np.diag(d), E=band, B=b, A=a)


def symmetry_pair(n: int) -> SymmetryPair:
    """The rotation pair: P e_j = e_{j+1 mod n}, Delta flips the last axis."""
    _validate_n(n)
    p = np.zeros((n, n))
    p[(np.arange(n) + 1) % n, np.arange(n)] = 1.0
    delta = np.diag(np.concatenate([np.ones(n - 1), [-1.0]]))
    return SymmetryPair(P=p, Delta=delta)


def check_symmetry(fam: ExtremalFamily) -> float:
    """Max-entry residual of (P Delta)^-1 A (P Delta) - e^{2 i pi/n} A.

    Also verifies the two exact intermediate identities
    P^-1 D P = e^{i pi/n} Delta D and P^-1 E P = E, raising ArithmeticError
    if either fails; those only depend on the construction, not on A, so a
    perturbed A still reports its own (large) residual.
    """
    n = fam.n
    pair = symmetry_pair(n)
    p, delta = pair.P, pair.Delta

    d_resid = float(np.max(np.abs(
        p.T @ fam.D @ p - np.exp(1j * np.pi / n) * (delta @ fam.D))))
    e_resid = float(np.max(np.abs(p.T @ fam.E @ p - fam.E)))
    if d_resid > 1e-13 or e_resid > 0:
        raise ArithmeticError(
            f"construction identities violated: D-shift residual {d_resid:.3e}, "
            f"E-shift residual {e_resid:.3e}")

    pd = p @ delta
    conj = pd.T @ fam.A @ pd  # (P Delta)^-1 = (P Delta)^T, real orthogonal
    return float(np.max(np.abs(conj - np.exp(2j * np.pi / n) * fam.A)))


def perturb(fam: ExtremalFamily, i: int, j: int, amount: float) -> ExtremalFamily:
    """Copy of the family with A[i, j] shifted; used for detector sanity tests."""
    a = fam.A.copy()
    a[i, j] += amount
    return replace(fam, A=a)


def _norm_excess(n: int) -> float:
    return 1.0 / (8.0 * np.sqrt(n))


def check_norm(fam: ExtremalFamily) -> CertificateReport:
    """Verify ||A|| = ||B|| = 1 + 1/(8 sqrt(n)) and the row-sum eigenvector."""
    n = fam.n
    target = 1.0 + _norm_excess(n)
    ones = np.ones(n)
    image = fam.B @ ones
    sigma_b = float(singular_values(fam.B)[0])
    sigma_a = float(singular_values(fam.A)[0])
    checks = (
        _check("E_row_sum_err", float(np.max(np.abs(fam.E.sum(axis=1) - n // 4))), 0.0),
        _check("B_ones_residual", float(np.max(np.abs(image - target * ones))), 1e-13),
        _check("B_norm_err", abs(sigma_b - target), 1e-11),
        _check("A_vs_B_norm_gap", abs(sigma_a - sigma_b), 1e-11),
    )
    return CertificateReport("norm_identity", n, checks)


def check_real_parts(fam: ExtremalFamily) -> CertificateReport:
    """Both Hermitian parts, of A and of A^-1, must have norm <= 1."""
    n = fam.n
    re_a = (fam.A + fam.A.conj().T) / 2
    ainv = inverse(fam.A)
    re_ainv = (ainv + ainv.conj().T) / 2
    lam_a = np.linalg.eigvalsh(re_a)
    lam_i = np.linalg.eigvalsh((re_ainv + re_ainv.conj().T) / 2)
    checks = (
        _check("reA_lambda_max", float(lam_a[-1]), 1.0),
        _check("reA_lambda_min_abs", float(-lam_a[0]), 1.0),
        _check("reAinv_lambda_max", float(lam_i[-1]), 1.0),
        _check("reAinv_lambda_min_abs", float(-lam_i[0]), 1.0),
    )
    return CertificateReport("hermitian_part_bound", n, checks)


def _cotangents(n: int) -> np.ndarray:
    # cot((i - 1/2) pi / n) for i = 1..n; the argument stays inside (0, pi)
    x = (np.arange(1, n + 1) - 0.5) * np.pi / n
    return np.cos(x) / np.sin(x)


def certificate_31(fam: ExtremalFamily) -> CertificateReport:
    """Certificate for ||(A + A*)/2|| <= 1.

    M carries cot-product weights on the band; the fixed bounds
    ||M||_F^2 <= 9/32, ||E|| = n/4, ||M|| + ||E||/(2 n^{3/2}) <= 7/8 imply
    that the quadratic form 2 I - M + E/(2 n^{3/2}) is positive semidefinite,
    which is also checked directly through its minimum eigenvalue.
    """
    n = fam.n
    scale = 1.0 / (2.0 * n ** 1.5)
    cot = _cotangents(n)
    m = np.outer(cot, cot) * fam.E * scale
    e_norm = float(singular_values(fam.E.astype(float))[0])
    m_norm = float(singular_values(m)[0])
    quad = 2.0 * np.eye(n) - m + fam.E * scale
    lam_min = float(np.linalg.eigvalsh((quad + quad.T) / 2)[0])
    checks = (
        _check("M_frobenius_sq", float(np.sum(m * m)), 9.0 / 32.0),
        _check("E_opnorm_err", abs(e_norm - n / 4.0), 1e-11),
        _check("M_plus_E_opnorm", m_norm + e_norm * scale, 7.0 / 8.0),
        _check("quad_form_neg_min", -lam_min, 0.0),
    )
    return CertificateReport("hermitian_part_certificate", n, checks)


def certificate_32(fam: ExtremalFamily) -> CertificateReport:
    """Certificate for ||(A^-1 + (A^-1)*)/2|| <= 1.

    Expanding (I + E/(2 n^{3/2}))^-1 splits the quadratic form into four
    pieces M1..M4 built from the band E and the tail F = E^2 (I + E/(2n^{3/2}))^-1;
    their norms obey 3/4, 1/(8 sqrt n), 1/14, 1/56 and sum below 1.
    """
    n = fam.n
    scale = 1.0 / (2.0 * n ** 1.5)
    cot = _cotangents(n)
    e = fam.E.astype(float)
    m1 = -np.outer(cot, cot) * e * scale
    m2 = e * scale
    f = np.linalg.solve(np.eye(n) + e * scale, e @ e)
    m3 = np.outer(cot, cot) * f / (4.0 * n ** 3)
    m4 = -f / (4.0 * n ** 3)
    m2_norm = float(singular_values(m2)[0])
    e_maxnorm = float(np.max(np.abs(e).sum(axis=1)))
    checks = (
        _check("M1_opnorm", float(singular_values(m1)[0]), 3.0 / 4.0),
        _check("M2_opnorm_err", abs(m2_norm - 1.0 / (8.0 * np.sqrt(n))), 1e-11),
        _check("F_opnorm", float(singular_values(f)[0]), n * n / 14.0),
        _check("M3_opnorm", float(singular_values(m3)[0]), 1.0 / 14.0),
        _check("M4_opnorm", float(singular_values(m4)[0]), 1.0 / 56.0),
        _check("M_sum_opnorm", float(singular_values(m1 + m2 + m3 + m4)[0]), 1.0),
        _check("E_maxnorm_err", abs(e_maxnorm - n / 4.0), 0.0),
        _check("F_entry_max", float(np.max(np.abs(f))), 2.0 * n / 7.0),
    )
    return CertificateReport("inverse_hermitian_part_certificate", n, checks)


@dataclass(frozen=True)
class ScalingRow:
    n: int
    eps: float      # 1/cos(pi/n) - 1, the radius excess
    delta: float    # ||A_n|| - 1, the norm excess
    w: float        # numerical radius of A_n
    w_inv: float    # numerical radius of A_n^-1


@dataclass(frozen=True)
class ScalingTable:
    rows: tuple[ScalingRow, ...]
    slope: float    # least-squares slope of log(delta) against log(eps)


def worker_count(tasks: int) -> int:
    """Worker cap from OPRADIUS_THREADS (0 or unset means auto)."""
    raw = os.environ.get("OPRADIUS_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"OPRADIUS_THREADS must be an integer, got {raw!r}") from exc
    if cap <= 0:
        cap = os.cpu_count() or 1
    return max(1, min(cap, tasks))


def _scaling_row(n: int, radius_tol: float, coarse: int | None) -> ScalingRow:
    fam = build(n)
    eps = 1.0 / np.cos(np.pi / n) - 1.0
    delta = float(singular_values(fam.A)[0]) - 1.0
    w = numerical_radius(fam.A, tol=radius_tol, coarse=coarse).value
    w_inv = numerical_radius(inverse(fam.A), tol=radius_tol, coarse=coarse).value
    return ScalingRow(n=n, eps=float(eps), delta=delta, w=w, w_inv=w_inv)


def scaling_experiment(k_min: int, k_max: int, radius_tol: float = 1e-6,
                       coarse: int | None = None) -> ScalingTable:
    """Tabulate (n, eps, delta, w, w_inv) for n = 8k + 4, k = k_min..k_max.

    The least-squares slope of log(delta) versus log(eps) estimates the decay
    exponent of the norm excess in the radius excess (1/4 asymptotically).
    Rows are computed concurrently when OPRADIUS_THREADS allows; the table is
    always assembled in ascending n order, so the output does not depend on
    scheduling.
    """
    if not 1 <= k_min <= k_max:
        raise ValueError("need 1 <= k_min <= k_max")
    ns = [8 * k + 4 for k in range(k_min, k_max + 1)]
    if ns[-1] > MAX_DIM:
        raise ValueError(f"k_max gives n = {ns[-1]} > {MAX_DIM}")
    workers = worker_count(len(ns))
    if workers == 1:
        rows = [_scaling_row(n, radius_tol, coarse) for n in ns]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda n: _scaling_row(n, radius_tol, coarse), ns))
    logs_eps = np.log([row.eps for row in rows])
    logs_delta = np.log([row.delta for row in rows])
    if len(rows) >= 2:
        slope = float(np.polyfit(logs_eps, logs_delta, 1)[0])
    else:
        slope = float("nan")
    return ScalingTable(tuple(rows), slope)
