"""Continuous moments of ``phi`` and ``psi^(s)`` directly, at size r.

Each moment sum is split into its positive- and negative-direction parts.
The negative part picks up a factor ``(-1)^l`` from the reflection
``x -> k - d x``, which gives

    m_j = d^-j sum_{l<=j} C(j,l) [M_{j-l}^+ + (-1)^l M_{j-l}^-] m_l

and the analogous wavelet formula. The split continuous moments themselves
are never materialized; only ``m_l`` is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .discrete import DEFAULT_MAX_ORDER, DiscreteMomentSet, discrete_moment_phi, discrete_moment_psi
from .errors import ConditionEError, SingularSystemError
from .masks import MaskBundle, doubled_mask_at_one, validate
from .spectral import DEFAULT_TOL, ConditionEReport, condition_e, solve, unit_eigvec

__all__ = ["SeparatedMoments", "moments_by_separation", "closed_form_check", "ClosedFormReport"]


@dataclass
class SeparatedMoments:
    order_max: int
    m_phi: list[np.ndarray]
    n_psi: dict[int, list[np.ndarray]]
    condition: ConditionEReport | None = None
    doubled_condition: ConditionEReport | None = None
    method: str = field(default="separation", init=False)


def _signed(ms: DiscreteMomentSet, l: int) -> np.ndarray:
    return ms.positive + (-1) ** l * ms.negative


def moments_by_separation(
    bundle: MaskBundle,
    max_order: int = 8,
    tol: float = DEFAULT_TOL,
    flip_sign: bool = False,
) -> SeparatedMoments:
    """Moments ``m_j`` and ``n_j^(s)`` for ``j = 0..max_order`` by separation.

    Requires Condition E for the r x r zeroth moment ``M_0``. The doubled
    check is computed as well and kept on the result, but not enforced.
    """
    report = validate(bundle)
    if not report.ok:
        raise ValueError(f"invalid mask bundle:\n{report}")
    if not 0 <= max_order <= DEFAULT_MAX_ORDER:
        raise ValueError(f"max_order must be in 0..{DEFAULT_MAX_ORDER}, got {max_order}")

    mask = bundle.scaling
    d, r = mask.dilation, mask.multiplicity
    M = [discrete_moment_phi(mask, j) for j in range(max_order + 1)]

    cond = condition_e(M[0].total, tol)
    doubled_cond = condition_e(doubled_mask_at_one(mask), tol)
    if not cond.satisfied:
        raise ConditionEError(f"Condition E for M_0 is {cond.describe()}")
    v = unit_eigvec(M[0].total, tol)
    m0 = v * np.sqrt(0.5)
    if flip_sign:
        m0 = -m0

    eye = np.eye(r)
    m = [m0]
    for j in range(1, max_order + 1):
        rhs = sum(comb(j, l) * (_signed(M[j - l], l) @ m[l]) for l in range(j))
        lhs = d**j * eye - _signed(M[0], j)
        try:
            m.append(solve(lhs, rhs))
        except SingularSystemError as exc:
            raise SingularSystemError(
                f"order j={j}: coefficient matrix {lhs.tolist()} is singular", exc.pivot
            ) from exc

    n_psi: dict[int, list[np.ndarray]] = {}
    for w in bundle.wavelets:
        N = [discrete_moment_psi(w, d, j, r=r) for j in range(max_order + 1)]
        n_psi[w.branch] = [
            sum(comb(j, l) * (_signed(N[j - l], l) @ m[l]) for l in range(j + 1)) / d**j
            for j in range(max_order + 1)
        ]

    return SeparatedMoments(
        order_max=max_order, m_phi=m, n_psi=n_psi, condition=cond, doubled_condition=doubled_cond
    )


@dataclass
class ClosedFormReport:
    deviations: dict[str, float]

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)


def closed_form_check(bundle: MaskBundle, tol: float = DEFAULT_TOL) -> ClosedFormReport:
    """Evaluate the written-out formulas for ``m_1..m_3`` and ``n_0..n_3``
    term by term and compare with :func:`moments_by_separation`."""
    ref = moments_by_separation(bundle, max_order=3, tol=tol)
    mask = bundle.scaling
    d, r = mask.dilation, mask.multiplicity
    I = np.eye(r)
    P = [discrete_moment_phi(mask, j) for j in range(4)]
    Mp = [p.positive for p in P]
    Mm = [p.negative for p in P]
    Mt = [p.total for p in P]

    m0 = ref.m_phi[0]
    m1 = np.linalg.solve(d * I - Mp[0] + Mm[0], Mt[1] @ m0)
    m2 = np.linalg.solve(d**2 * I - Mt[0], Mt[2] @ m0 + 2 * (Mp[1] - Mm[1]) @ m1)
    m3 = np.linalg.solve(
        d**3 * I - Mp[0] + Mm[0],
        Mt[3] @ m0 + 3 * (Mp[2] - Mm[2]) @ m1 + 3 * Mt[1] @ m2,
    )
    dev = {}
    for j, mj in enumerate((m1, m2, m3), start=1):
        dev[f"m{j}"] = float(np.abs(mj - ref.m_phi[j]).max())

    for w in bundle.wavelets:
        s = w.branch
        Q = [discrete_moment_psi(w, d, j, r=r) for j in range(4)]
        Np = [q.positive for q in Q]
        Nm = [q.negative for q in Q]
        Nt = [q.total for q in Q]
        n = [
            Nt[0] @ m0,
            (Nt[1] @ m0 + (Np[0] - Nm[0]) @ m1) / d,
            (Nt[2] @ m0 + 2 * (Np[1] - Nm[1]) @ m1 + Nt[0] @ m2) / d**2,
            (Nt[3] @ m0 + 3 * (Np[2] - Nm[2]) @ m1 + 3 * Nt[1] @ m2 + (Np[0] - Nm[0]) @ m3) / d**3,
        ]
        for j, nj in enumerate(n):
            dev[f"n{j}({s})"] = float(np.abs(nj - ref.n_psi[s][j]).max())
    return ClosedFormReport(dev)
