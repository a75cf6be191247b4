"""Cross-checks on computed moments.

* :func:`compare_methods` runs doubling and separation and diffs them.
* :func:`vanishing_moments` counts leading zero wavelet moments.
* :func:`cascade_samples` / :func:`quadrature_moment` form an independent
  oracle: iterate the doubled refinement operator from a box and integrate
  the iterate numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .doubling import moments_by_doubling
from .errors import ConditionEError
from .masks import CoefficientMask, MaskBundle, doubled_block, doubled_mask_at_one
from .separation import moments_by_separation
from .spectral import DEFAULT_TOL, condition_e

__all__ = [
    "ComparisonReport",
    "compare_moments",
    "compare_methods",
    "VanishingCount",
    "vanishing_moments",
    "SampledFunction",
    "cascade_support",
    "cascade_samples",
    "quadrature_moment",
    "oracle_deviation",
]


@dataclass
class ComparisonReport:
    m_diff: list[float]
    n_diff: dict[int, list[float]]
    tol: float

    @property
    def overall_max(self) -> float:
        values = list(self.m_diff)
        for series in self.n_diff.values():
            values.extend(series)
        return max(values, default=0.0)

    @property
    def passed(self) -> bool:
        return self.overall_max <= self.tol


def _maxabs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a, float) - np.asarray(b, float)), initial=0.0))


def compare_moments(first, second, tol: float = 1e-9) -> ComparisonReport:
    """Elementwise max difference of two results exposing ``m_phi`` and ``n_psi``."""
    if len(first.m_phi) != len(second.m_phi):
        raise ValueError("results cover different orders")
    if set(first.n_psi) != set(second.n_psi):
        raise ValueError("results cover different wavelet branches")
    m_diff = [_maxabs(a, b) for a, b in zip(first.m_phi, second.m_phi)]
    n_diff = {
        s: [_maxabs(a, b) for a, b in zip(first.n_psi[s], second.n_psi[s])] for s in sorted(first.n_psi)
    }
    return ComparisonReport(m_diff=m_diff, n_diff=n_diff, tol=tol)


def compare_methods(bundle: MaskBundle, max_order: int = 8, tol: float = 1e-9) -> ComparisonReport:
    doubled = moments_by_doubling(bundle, max_order)
    separated = moments_by_separation(bundle, max_order)
    return compare_moments(doubled, separated, tol)


class VanishingCount(NamedTuple):
    count: int
    exhausted: bool


def vanishing_moments(n_series: Sequence, tol: float = 1e-10) -> VanishingCount:
    """Largest p with ``max|n_j| <= tol`` for every ``j < p``.

    ``exhausted`` is set when every supplied order vanished, in which case
    the true count may be larger.
    """
    if len(n_series) == 0:
        raise ValueError("need at least one moment")
    for p, nj in enumerate(n_series):
        if np.max(np.abs(nj)) > tol:
            return VanishingCount(p, False)
    return VanishingCount(len(n_series), True)


@dataclass
class SampledFunction:
    """Piecewise-constant samples of the 2r-vector ``Phi``.

    ``values[i]`` holds the value on ``[start + i*spacing, start + (i+1)*spacing)``.
    """

    start: float
    spacing: float
    values: np.ndarray
    iterations: int

    @property
    def grid(self) -> np.ndarray:
        return self.start + self.spacing * np.arange(self.values.shape[0])

    @property
    def stop(self) -> float:
        return self.start + self.spacing * self.values.shape[0]


def cascade_support(mask: CoefficientMask) -> tuple[int, int]:
    """Symmetric integer interval that contains every cascade iterate.

    The doubled coefficients live on ``K ∪ -K``; a refinable function with
    mask indices in ``[a, b]`` is supported in ``[a, b] / (d - 1)``. The box
    start ``[0, 1)`` lies inside too.
    """
    ks = mask.indices or [0]
    reach = max(abs(k) for k in ks)
    half = int(np.ceil(reach / (mask.dilation - 1)))
    return -max(half, 1), max(half, 1)


def cascade_samples(
    mask: CoefficientMask,
    iterations: int,
    level: int,
    m0=None,
    interval: tuple[int, int] | None = None,
    tol: float = DEFAULT_TOL,
) -> SampledFunction:
    """Iterate ``Phi <- sqrt(d) sum_k C_k Phi(d x - k)`` from ``m0 * 1_[0,1)``.

    The grid spacing is ``d**-level`` on an integer interval, so every
    iterate with ``iterations <= level`` is represented exactly.
    ``m0`` defaults to the normalized doubled zeroth moment.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    if level < iterations:
        raise ValueError(f"grid/support mismatch: level {level} cannot resolve {iterations} iterations")
    d, r = mask.dilation, mask.multiplicity
    cond = condition_e(doubled_mask_at_one(mask), tol)
    if not cond.satisfied:
        raise ConditionEError(f"Condition E for the doubled mask at 1 is {cond.describe()}")
    if m0 is None:
        m0 = moments_by_doubling(MaskBundle(mask), max_order=0, tol=tol).m_doubled[0]
    m0 = np.asarray(m0, dtype=float)

    need = cascade_support(mask)
    lo, hi = interval if interval is not None else need
    if lo > need[0] or hi < need[1]:
        raise ValueError(f"grid/support mismatch: interval [{lo}, {hi}] does not contain [{need[0]}, {need[1]}]")

    cells_per_unit = d**level
    n_cells = (hi - lo) * cells_per_unit
    values = np.zeros((n_cells, 2 * r))
    box = slice(-lo * cells_per_unit, (1 - lo) * cells_per_unit)
    values[box] = m0

    ks = set(mask.indices)
    ks |= {-k for k in ks}
    blocks = {k: doubled_block(mask.positive, mask.negative, k, r) for k in sorted(ks)}
    idx = d * np.arange(n_cells)
    root_d = np.sqrt(d)
    for _ in range(iterations):
        new = np.zeros_like(values)
        for k, C in blocks.items():
            # cell i maps to cell d*i + (d*lo - k - lo) * d**level
            src = idx + (d * lo - k - lo) * cells_per_unit
            ok = (src >= 0) & (src < n_cells)
            new[ok] += values[src[ok]] @ C.T
        values = root_d * new
    return SampledFunction(start=float(lo), spacing=float(d) ** -level, values=values, iterations=iterations)


def quadrature_moment(f: SampledFunction, j: int) -> np.ndarray:
    """Midpoint rule for ``∫ x^j f(x) dx`` over the sample cells."""
    mid = f.grid + 0.5 * f.spacing
    return f.spacing * (mid**j) @ f.values


def oracle_deviation(bundle: MaskBundle, iterations: int, level: int, max_order: int = 2) -> list[float]:
    """Max elementwise gap between cascade quadrature and the recursion, per order."""
    ref = moments_by_doubling(bundle, max_order)
    f = cascade_samples(bundle.scaling, iterations, level, m0=ref.m_doubled[0])
    return [_maxabs(quadrature_moment(f, j), ref.m_doubled[j]) for j in range(max_order + 1)]

