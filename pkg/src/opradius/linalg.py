"""Dense complex matrix kernels: Hermitian eigendecomposition, singular values,
polar decomposition, inversion, and the JSON matrix file format.

All operators are square numpy arrays of dtype complex128. Every function is a
pure function of its inputs and never mutates its arguments, so concurrent
calls on shared read-only matrices are safe.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HermitianEigen",
    "PolarFactors",
    "as_matrix",
    "eig_hermitian",
    "jacobi_eigh",
    "singular_values",
    "operator_norm",
    "polar",
    "inverse",
    "matrix_to_payload",
    "matrix_from_payload",
    "load_matrix",
    "save_matrix",
]

# Relative Frobenius deviation above which an input is rejected as non-Hermitian.
HERMITIAN_RTOL = 1e-12
# sigma_min/sigma_max below which a matrix is treated as singular.
CONDITION_FLOOR = 1e-12


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    values are real and ascending; vectors[:, k] is the unit eigenvector for
    values[k], and the columns are orthonormal.
    """

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class PolarFactors:
    """Right polar decomposition A = unitary @ positive."""

    unitary: np.ndarray
    positive: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Validate and return a square complex128 matrix with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValueError("matrix must have dimension >= 1")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _hermitian_part(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2


def eig_hermitian(h) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input must satisfy ||H - H*||_F <= 1e-12 ||H||_F; it is symmetrized
    before solving so the backend always sees an exactly Hermitian matrix.
    """
    h = as_matrix(h)
    scale = float(np.linalg.norm(h))
    deviation = float(np.linalg.norm(h - h.conj().T))
    if deviation > HERMITIAN_RTOL * scale:
        raise ValueError(
            f"matrix is not Hermitian: ||H - H*||_F = {deviation:.3e} "
            f"exceeds {HERMITIAN_RTOL:g} * ||H||_F = {HERMITIAN_RTOL * scale:.3e}"
        )
    values, vectors = np.linalg.eigh(_hermitian_part(h))
    return HermitianEigen(values, vectors)


def _jacobi_rotation(alpha: float, gamma: float, beta: complex) -> np.ndarray:
    """Unitary 2x2 rotation annihilating the off-diagonal of a Hermitian block.

    Uses the inner-rotation parametrization (tangent from the diagonal gap),
    which stays accurate when |beta| is many orders of magnitude below the
    gap; the closed-form eigenvector route loses the mixing angle to
    cancellation in exactly that regime.
    """
    b = abs(beta)
    phase = beta / b
    tau = (gamma - alpha) / (2.0 * b)
    if tau >= 0.0:
        t = -1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = 1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    return np.array([[c, -s * phase], [s * np.conj(phase), c]])


def jacobi_eigh(h, tol: float = 1e-14, max_sweeps: int = 60) -> HermitianEigen:
    """Cyclic two-sided Jacobi diagonalization of a complex Hermitian matrix.

    Rotations are applied in a fixed (p, q) order, which makes the run
    deterministic. Quadratic convergence makes ~log(1/tol) sweeps enough at
    small dimensions. This is the slow, self-contained reference path; it is
    used to cross-check the LAPACK-backed eig_hermitian.
    """
    h = as_matrix(h)
    scale = float(np.linalg.norm(h))
    deviation = float(np.linalg.norm(h - h.conj().T))
    if deviation > HERMITIAN_RTOL * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    a = _hermitian_part(h)
    n = a.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    threshold = tol * max(scale, 1.0)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                # skipping entries already at the target level keeps the
                # hard zeroing below from discarding real mass
                if abs(a[p, q]) <= 0.01 * threshold / max(n, 2):
                    continue
                rot = _jacobi_rotation(a[p, p].real, a[q, q].real, a[p, q])
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.conj().T @ a[[p, q], :]
                vecs[:, [p, q]] = vecs[:, [p, q]] @ rot
                a[p, q] = 0.0
                a[q, p] = 0.0
    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return HermitianEigen(values[order], vecs[:, order])


def singular_values(a) -> np.ndarray:
    """Singular values of a square matrix, descending.

    Computed from the eigenvalues of the symmetrized Gram matrix A*A; the
    squared conditioning is acceptable at the certified tolerances (>= 1e-11)
    used throughout this package.
    """
    a = as_matrix(a)
    gram = _hermitian_part(a.conj().T @ a)
    lam = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(lam, 0.0, None))[::-1]


def operator_norm(a) -> float:
    """Spectral norm, i.e. the largest singular value."""
    return float(singular_values(a)[0])


def _check_invertible(sv: np.ndarray) -> None:
    if sv[0] == 0.0 or sv[-1] <= CONDITION_FLOOR * sv[0]:
        raise np.linalg.LinAlgError(
            f"matrix is singular to working precision "
            f"(sigma_min/sigma_max = {0.0 if sv[0] == 0.0 else sv[-1] / sv[0]:.3e})"
        )


def inverse(a) -> np.ndarray:
    """Matrix inverse, rejecting inputs with sigma_min <= 1e-12 sigma_max."""
    a = as_matrix(a)
    _check_invertible(singular_values(a))
    return np.linalg.inv(a)


def polar(a) -> PolarFactors:
    """Right polar decomposition of an invertible matrix.

    The unitary factor is A (A*A)^(-1/2), computed from the eigendecomposition
    of the Gram matrix; it is the nearest unitary to A in operator norm.
    """
    a = as_matrix(a)
    gram = _hermitian_part(a.conj().T @ a)
    lam, v = np.linalg.eigh(gram)
    lam = np.clip(lam, 0.0, None)
    if lam[0] <= (CONDITION_FLOOR ** 2) * lam[-1] or lam[-1] == 0.0:
        raise np.linalg.LinAlgError("polar factorization needs an invertible matrix")
    roots = np.sqrt(lam)
    positive = _hermitian_part((v * roots) @ v.conj().T)
    inv_root = (v / roots) @ v.conj().T
    unitary = a @ inv_root
    return PolarFactors(unitary, positive)


# ---------------------------------------------------------------------------
# Matrix file format: {"dim": n, "re": [n*n floats], "im": [n*n floats]},
# row-major. This is the wire format accepted by every CLI --matrix flag.
# ---------------------------------------------------------------------------


def matrix_to_payload(a) -> dict:
    """Serialize a matrix to the JSON payload dict."""
    m = as_matrix(a)
    n = m.shape[0]
    return {
        "dim": n,
        "re": m.real.reshape(-1).tolist(),
        "im": m.imag.reshape(-1).tolist(),
    }


def matrix_from_payload(payload: dict) -> np.ndarray:
    """Parse the JSON payload dict back into a validated matrix."""
    if not isinstance(payload, dict):
        raise ValueError("matrix payload must be a JSON object")
    missing = {"dim", "re", "im"} - set(payload)
    if missing:
        raise ValueError(f"matrix payload is missing keys: {sorted(missing)}")
    n = payload["dim"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("matrix payload 'dim' must be a positive integer")
    re = np.asarray(payload["re"], dtype=np.float64)
    im = np.asarray(payload["im"], dtype=np.float64)
    if re.shape != (n * n,) or im.shape != (n * n,):
        raise ValueError("matrix payload 're'/'im' must hold dim*dim floats")
    return as_matrix((re + 1j * im).reshape(n, n))


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_payload(json.load(fh))


def save_matrix(path, a) -> None:
    """Write a matrix file atomically (temp file in place, then rename)."""
    payload = matrix_to_payload(a)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
