"""Two-direction refinement masks.

A scaling mask holds the positive- and negative-direction coefficient
matrices ``P_k^+`` and ``P_k^-`` of

    phi(x) = sqrt(d) * sum_k [P_k^+ phi(d x - k) + P_k^- phi(k - d x)],

and a wavelet mask holds ``Q_k^(s)+`` and ``Q_k^(s)-`` for one branch ``s``.
Objects here are immutable; checking is done by :func:`validate`, which
reports problems instead of raising so that callers can show all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = [
    "CoefficientMask",
    "WaveletMask",
    "MaskBundle",
    "ValidationReport",
    "validate",
    "doubled_mask_at_one",
    "doubled_block",
]


def _freeze(coeffs: Mapping[int, object]) -> dict[int, np.ndarray]:
    frozen = {}
    for k, value in coeffs.items():
        arr = np.array(value, dtype=float, ndmin=2)
        arr.setflags(write=False)
        frozen[int(k)] = arr
    return frozen


@dataclass(frozen=True)
class CoefficientMask:
    """Scaling-function mask: dilation ``d``, multiplicity ``r`` and the
    coefficient maps ``k -> P_k^+`` and ``k -> P_k^-``."""

    dilation: int
    multiplicity: int
    support: tuple[int, int]
    positive: dict[int, np.ndarray] = field(default_factory=dict)
    negative: dict[int, np.ndarray] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", (int(self.support[0]), int(self.support[1])))
        object.__setattr__(self, "positive", _freeze(self.positive))
        object.__setattr__(self, "negative", _freeze(self.negative))

    def coefficient(self, k: int, direction: str) -> np.ndarray:
        """``P_k^+`` (direction ``"+"``) or ``P_k^-``, zero if not stored."""
        table = self.positive if direction == "+" else self.negative
        if k in table:
            return table[k]
        return np.zeros((self.multiplicity, self.multiplicity))

    @property
    def indices(self) -> list[int]:
        return sorted(set(self.positive) | set(self.negative))


@dataclass(frozen=True)
class WaveletMask:
    """Coefficients ``Q_k^(s)+`` and ``Q_k^(s)-`` of wavelet branch ``s``."""

    branch: int
    support: tuple[int, int]
    positive: dict[int, np.ndarray] = field(default_factory=dict)
    negative: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", (int(self.support[0]), int(self.support[1])))
        object.__setattr__(self, "positive", _freeze(self.positive))
        object.__setattr__(self, "negative", _freeze(self.negative))

    @property
    def indices(self) -> list[int]:
        return sorted(set(self.positive) | set(self.negative))


@dataclass(frozen=True)
class MaskBundle:
    scaling: CoefficientMask
    wavelets: tuple[WaveletMask, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "wavelets", tuple(self.wavelets))

    @property
    def dilation(self) -> int:
        return self.scaling.dilation

    @property
    def multiplicity(self) -> int:
        return self.scaling.multiplicity

    @property
    def name(self) -> str:
        return self.scaling.name

    def wavelet(self, branch: int) -> WaveletMask:
        for w in self.wavelets:
            if w.branch == branch:
                return w
        raise KeyError(f"no wavelet branch {branch}")


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(self.violations)


def _check_table(label, table, support, r, out):
    lo, hi = support
    if lo > hi:
        out.append(f"{label}: empty support [{lo}, {hi}]")
    for k, mat in sorted(table.items()):
        where = f"{label} k={k}"
        if mat.shape != (r, r):
            out.append(f"{where}: dimension mismatch, got {mat.shape[0]}x{mat.shape[1]}, expected {r}x{r}")
        if not np.all(np.isfinite(mat)):
            out.append(f"{where}: non-finite entry")
        if not lo <= k <= hi and np.any(mat != 0):
            out.append(f"{where}: coefficient outside support [{lo}, {hi}]")


def validate(bundle: MaskBundle) -> ValidationReport:
    """Collect every structural problem in ``bundle``."""
    out: list[str] = []
    mask = bundle.scaling
    d, r = mask.dilation, mask.multiplicity
    if d < 2:
        out.append(f"dilation must be >= 2, got {d}")
    if r < 1:
        out.append(f"multiplicity must be >= 1, got {r}")
        return ValidationReport(out)
    _check_table("P+", mask.positive, mask.support, r, out)
    _check_table("P-", mask.negative, mask.support, r, out)

    seen: set[int] = set()
    if len(bundle.wavelets) > max(d - 1, 0):
        out.append(f"too many wavelet branches: {len(bundle.wavelets)} > d-1 = {d - 1}")
    for w in bundle.wavelets:
        s = w.branch
        if s in seen:
            out.append(f"duplicate branch {s}")
        seen.add(s)
        if not 1 <= s <= d - 1:
            out.append(f"branch {s} outside 1..{d - 1}")
        _check_table(f"Q({s})+", w.positive, w.support, r, out)
        _check_table(f"Q({s})-", w.negative, w.support, r, out)
    return ValidationReport(out)


def doubled_block(positive, negative, k: int, r: int) -> np.ndarray:
    """The 2r x 2r coefficient ``[[X_k^+, X_k^-], [X_{-k}^-, X_{-k}^+]]``."""
    zero = np.zeros((r, r))
    return np.block([
        [positive.get(k, zero), negative.get(k, zero)],
        [negative.get(-k, zero), positive.get(-k, zero)],
    ])


def doubled_mask_at_one(mask: CoefficientMask) -> np.ndarray:
    """Symbol of the deduced one-direction refinement at ``z = 1``.

    ``(1/sqrt(d)) * sum_k [[P_k^+, P_k^-], [P_{-k}^-, P_{-k}^+]]``; this is
    the matrix on which Condition E is tested.
    """
    r = mask.multiplicity
    ks = set(mask.indices)
    ks |= {-k for k in ks}
    total = np.zeros((2 * r, 2 * r))
    for k in sorted(ks):
        total += doubled_block(mask.positive, mask.negative, k, r)
    return total / np.sqrt(mask.dilation)
