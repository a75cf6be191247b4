"""Discrete moments of the scaling and wavelet masks.

For coefficients ``X_k^+``, ``X_k^-`` (either ``P`` or ``Q^(s)``) and order j:

* positive  ``(1/sqrt(d)) sum_k k^j X_k^+``
* negative  ``(1/sqrt(d)) sum_k k^j X_k^-``
* total     positive + negative
* doubled   ``(1/sqrt(d)) sum_k k^j [[X_k^+, X_k^-], [X_{-k}^-, X_{-k}^+]]``
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .masks import CoefficientMask, WaveletMask, doubled_block

__all__ = [
    "DEFAULT_MAX_ORDER",
    "DiscreteMomentSet",
    "discrete_moment_phi",
    "discrete_moment_psi",
]

DEFAULT_MAX_ORDER = 16


@dataclass(frozen=True)
class DiscreteMomentSet:
    order: int
    total: np.ndarray
    positive: np.ndarray
    negative: np.ndarray
    doubled: np.ndarray


def _power(k: int, j: int) -> float:
    # 0**0 == 1 so that the zeroth moment is the plain coefficient sum.
    return float(k) ** j


def _moments(positive, negative, d: int, r: int, j: int, max_order: int) -> DiscreteMomentSet:
    if j < 0:
        raise ValueError(f"moment order must be >= 0, got {j}")
    if j > max_order:
        raise ValueError(f"moment order {j} exceeds max_order={max_order}")
    scale = 1.0 / np.sqrt(d)
    pos = np.zeros((r, r))
    neg = np.zeros((r, r))
    for k, mat in positive.items():
        pos += _power(k, j) * mat
    for k, mat in negative.items():
        neg += _power(k, j) * mat

    ks = set(positive) | set(negative)
    ks |= {-k for k in ks}
    dbl = np.zeros((2 * r, 2 * r))
    for k in ks:
        dbl += _power(k, j) * doubled_block(positive, negative, k, r)

    pos *= scale
    neg *= scale
    dbl *= scale
    return DiscreteMomentSet(order=j, total=pos + neg, positive=pos, negative=neg, doubled=dbl)


def discrete_moment_phi(mask: CoefficientMask, j: int, max_order: int = DEFAULT_MAX_ORDER) -> DiscreteMomentSet:
    """Moments ``M_j``, ``M_j^+``, ``M_j^-`` and the doubled ``M_j^±``."""
    return _moments(mask.positive, mask.negative, mask.dilation, mask.multiplicity, j, max_order)


def discrete_moment_psi(
    wmask: WaveletMask, d: int, j: int, r: int | None = None, max_order: int = DEFAULT_MAX_ORDER
) -> DiscreteMomentSet:
    """Moments ``N_j^(s)`` and friends for one wavelet branch.

    ``r`` is only needed when the branch has no stored coefficients.
    """
    if r is None:
        mats = list(wmask.positive.values()) + list(wmask.negative.values())
        if not mats:
            raise ValueError("multiplicity r is required for an empty wavelet mask")
        r = mats[0].shape[0]
    return _moments(wmask.positive, wmask.negative, d, r, j, max_order)
