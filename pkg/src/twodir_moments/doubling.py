"""Continuous moments via the doubled function ``Phi(x) = [phi(x), phi(-x)]``.

``Phi`` obeys an ordinary one-direction refinement with 2r x 2r
coefficients, so the classical moment recursion applies to it; the moments
of ``phi`` and ``psi^(s)`` are the upper halves of the doubled moments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .discrete import DEFAULT_MAX_ORDER, discrete_moment_phi, discrete_moment_psi
from .errors import ConditionEError, SingularSystemError
from .masks import MaskBundle, validate
from .spectral import DEFAULT_TOL, ConditionEReport, condition_e, solve, unit_eigvec

__all__ = ["DoubledMoments", "moments_by_doubling", "extract_upper", "DEFAULT_ORDER"]

DEFAULT_ORDER = 8


@dataclass
class DoubledMoments:
    order_max: int
    m_doubled: list[np.ndarray]
    n_doubled: dict[tuple[int, int], np.ndarray]
    m_phi: list[np.ndarray]
    n_psi: dict[int, list[np.ndarray]]
    condition: ConditionEReport | None = None
    method: str = field(default="doubling", init=False)


def extract_upper(v) -> np.ndarray:
    """First half of an even-length vector."""
    v = np.asarray(v)
    if v.shape[0] % 2:
        raise ValueError(f"expected an even-length vector, got length {v.shape[0]}")
    return v[: v.shape[0] // 2].copy()


def moments_by_doubling(
    bundle: MaskBundle,
    max_order: int = DEFAULT_ORDER,
    tol: float = DEFAULT_TOL,
    flip_sign: bool = False,
) -> DoubledMoments:
    """Moments ``m_j`` and ``n_j^(s)`` for ``j = 0..max_order`` by doubling.

    ``m_0^±`` is the unit eigenvector of ``M_0^±`` for eigenvalue 1 (largest
    entry positive unless ``flip_sign``); higher orders solve
    ``(d^j I - M_0^±) m_j^± = sum_{l<j} C(j,l) M_{j-l}^± m_l^±`` and the
    wavelet moments are ``d^-j sum_{l<=j} C(j,l) N_{j-l}^(s)± m_l^±``.
    """
    report = validate(bundle)
    if not report.ok:
        raise ValueError(f"invalid mask bundle:\n{report}")
    if not 0 <= max_order <= DEFAULT_MAX_ORDER:
        raise ValueError(f"max_order must be in 0..{DEFAULT_MAX_ORDER}, got {max_order}")

    mask = bundle.scaling
    d, r = mask.dilation, mask.multiplicity
    M = [discrete_moment_phi(mask, j).doubled for j in range(max_order + 1)]

    cond = condition_e(M[0], tol)
    if not cond.satisfied:
        raise ConditionEError(f"Condition E for the doubled mask at 1 is {cond.describe()}")
    m0 = unit_eigvec(M[0], tol)
    if np.linalg.norm(m0[r:] - m0[:r]) > 1e-8:
        # an antisymmetric fixed vector would force m_0 = -m_0
        raise ConditionEError("eigenvalue-1 eigenvector of the doubled mask is not of the form [v, v]")
    if flip_sign:
        m0 = -m0

    eye = np.eye(2 * r)
    m = [m0]
    for j in range(1, max_order + 1):
        rhs = sum(comb(j, l) * (M[j - l] @ m[l]) for l in range(j))
        try:
            m.append(solve(d**j * eye - M[0], rhs))
        except SingularSystemError as exc:
            raise SingularSystemError(f"order j={j}: d^j I - M_0 is singular", exc.pivot) from exc

    n_doubled: dict[tuple[int, int], np.ndarray] = {}
    n_psi: dict[int, list[np.ndarray]] = {}
    for w in bundle.wavelets:
        s = w.branch
        N = [discrete_moment_psi(w, d, j, r=r).doubled for j in range(max_order + 1)]
        series = []
        for j in range(max_order + 1):
            nj = sum(comb(j, l) * (N[j - l] @ m[l]) for l in range(j + 1)) / d**j
            n_doubled[(s, j)] = nj
            series.append(extract_upper(nj))
        n_psi[s] = series

    return DoubledMoments(
        order_max=max_order,
        m_doubled=m,
        n_doubled=n_doubled,
        m_phi=[extract_upper(v) for v in m],
        n_psi=n_psi,
        condition=cond,
    )
