"""Small dense linear algebra: eigenvalues, Condition E, eigenvector for 1, solves."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConditionEError, EigenvalueError, SingularSystemError

__all__ = [
    "DEFAULT_TOL",
    "ConditionEReport",
    "eigenvalues",
    "condition_e",
    "unit_eigvec",
    "fix_sign",
    "solve",
]

DEFAULT_TOL = 1e-9
# Relative pivot size below which a system is treated as singular.
PIVOT_RTOL = 1e-13


@dataclass(frozen=True)
class ConditionEReport:
    eigenvalues: tuple[complex, ...]
    has_simple_one: bool
    spectral_ok: bool
    tolerance_used: float

    @property
    def satisfied(self) -> bool:
        return self.has_simple_one and self.spectral_ok

    def describe(self) -> str:
        if self.satisfied:
            return "satisfied"
        reasons = []
        near_one = sum(abs(lam - 1) <= self.tolerance_used for lam in self.eigenvalues)
        if near_one == 0:
            reasons.append("no eigenvalue 1")
        elif near_one > 1:
            reasons.append(f"eigenvalue 1 not simple (multiplicity {near_one})")
        if not self.spectral_ok:
            reasons.append("another eigenvalue has modulus >= 1")
        return "violated: " + ", ".join(reasons)


def eigenvalues(A) -> np.ndarray:
    """All eigenvalues of a real square matrix, sorted by decreasing real part.

    Raises :class:`EigenvalueError` if LAPACK fails to converge.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    try:
        lam = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise EigenvalueError(f"eigenvalue iteration did not converge: {exc}") from exc
    lam = lam.astype(complex)
    order = np.lexsort((-lam.imag, -lam.real))
    return lam[order]


def condition_e(A, tol: float = DEFAULT_TOL) -> ConditionEReport:
    """Simple eigenvalue 1 with every other eigenvalue strictly inside the unit disk."""
    lam = eigenvalues(A)
    is_one = np.abs(lam - 1.0) <= tol
    others = lam[~is_one]
    return ConditionEReport(
        eigenvalues=tuple(complex(x) for x in lam),
        has_simple_one=int(is_one.sum()) == 1,
        spectral_ok=bool(np.all(np.abs(others) < 1.0 - tol)),
        tolerance_used=tol,
    )


def fix_sign(v: np.ndarray) -> np.ndarray:
    """Flip ``v`` so its largest-magnitude entry is positive (first one on ties)."""
    mag = np.abs(v)
    top = mag.max()
    if top == 0:
        return v
    # rounding can split exact ties, so treat near-equal magnitudes as tied
    idx = int(np.flatnonzero(mag >= top * (1 - 1e-12))[0])
    return -v if v[idx] < 0 else v


def unit_eigvec(A, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unit-norm eigenvector of ``A`` for its simple eigenvalue 1."""
    A = np.asarray(A, dtype=float)
    lam = eigenvalues(A)
    count = int(np.sum(np.abs(lam - 1.0) <= tol))
    if count != 1:
        raise ConditionEError(
            f"Condition E prerequisite failed: eigenvalue 1 found {count} times in {np.round(lam, 10).tolist()}"
        )
    n = A.shape[0]
    # null vector of A - I from the smallest singular value
    _, _, vt = np.linalg.svd(A - np.eye(n))
    v = vt[-1].copy()
    v /= np.linalg.norm(v)
    v = fix_sign(v)
    resid = np.linalg.norm(A @ v - v)
    if resid > max(tol, 1e-12):
        raise ConditionEError(f"Condition E prerequisite failed: eigenvector residual {resid:.3e}")
    return v


def solve(A, b) -> np.ndarray:
    """Solve ``A x = b`` by LU with partial pivoting.

    Raises :class:`SingularSystemError` when a pivot falls below
    ``PIVOT_RTOL * max|A|``.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.abs(A).max() if A.size else 0.0
    if scale == 0:
        raise SingularSystemError("singular system", 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A)
    pivot = float(np.abs(np.diag(lu)).min())
    if pivot < PIVOT_RTOL * scale:
        raise SingularSystemError("singular system", pivot)
    return scipy.linalg.lu_solve((lu, piv), b)
