"""Distance from an invertible matrix to the unitary group.

The infimum of ||A - U|| over unitaries equals max(||A|| - 1, 1 - 1/||A^-1||)
and is attained by the unitary polar factor of A. Combined with the psi
envelopes this yields the radius-driven gap bound: if w_rho(A) <= r and
w_rho(A^-1) <= r then some unitary U has ||A - U|| <= psi_rho_upper(r) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import psi_rho_upper
from .linalg import as_matrix, polar, singular_values

__all__ = ["UnitaryGap", "distance_to_unitaries", "stampfli_gap_bound"]


@dataclass(frozen=True)
class UnitaryGap:
    """Distance to the unitary group and the nearest unitary.

    distance = max(norm_excess, inverse_excess) where norm_excess = ||A|| - 1
    and inverse_excess = 1 - 1/||A^-1||; `nearest` is the unitary polar
    factor, which attains the distance in operator norm.
    """

    distance: float
    nearest: np.ndarray
    norm_excess: float
    inverse_excess: float


def distance_to_unitaries(a) -> UnitaryGap:
    """Operator-norm distance from an invertible matrix to the unitaries."""
    a = as_matrix(a)
    sv = singular_values(a)
    factors = polar(a)  # raises for singular input
    norm_excess = float(sv[0] - 1.0)
    inverse_excess = float(1.0 - sv[-1])
    return UnitaryGap(
        distance=max(norm_excess, inverse_excess),
        nearest=factors.unitary,
        norm_excess=norm_excess,
        inverse_excess=inverse_excess,
    )


def stampfli_gap_bound(w: float, w_inv: float, rho: float = 2.0) -> float:
    """Upper bound psi_rho_upper(max(w, w_inv)) - 1 on the unitary distance.

    w and w_inv are rho-radii of the matrix and of its inverse; both must be
    >= 1 (up to 1e-12 slack), which always holds for genuine radii of an
    invertible matrix.
    """
    if w < 1.0 - 1e-12 or w_inv < 1.0 - 1e-12:
        raise ValueError("radii of an invertible matrix and its inverse are >= 1")
    r = max(float(w), float(w_inv), 1.0)
    return psi_rho_upper(rho, r) - 1.0
