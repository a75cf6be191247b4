"""Shared test data: closed-form example values and random Condition E masks."""

from math import sqrt

import numpy as np

from twodir_moments.masks import CoefficientMask, MaskBundle, WaveletMask

S2, S3, S7, S14, S21 = sqrt(2), sqrt(3), sqrt(7), sqrt(14), sqrt(21)

# Closed forms quoted with the bundled examples.
EX51 = {
    "m": [S2 / 2, (7 * S2 - S14) / 12, (28 * S2 - 7 * S14) / 36],
    "n": [0.0, 0.0, (4 * S2 - S14) / 48],
    "eig": [1.0, (1 - S7) / 4],
}
EX52 = {
    "m": [
        np.array([S2 / 2, 0.0]),
        (7 * S2 - S14) / 12 * np.array([1.0, 0.0]),
        (4 * S2 - S14) / 252 * np.array([49.0, 3 * S3]),
    ],
    "n": [np.zeros(2), np.zeros(2), np.array([0.0, 4 * S2 - S14]) / 168],
    "eig": [
        1.0,
        0.5,
        (3 - 3 * S7 + sqrt(8 - 2 * S7)) / 16,
        (3 - 3 * S7 - sqrt(8 - 2 * S7)) / 16,
    ],
}

# filled by test_acceptance, printed by the terminal summary hook
ACCEPTANCE_LINES: list[str] = []


def _spectral_radius(a):
    return np.abs(np.linalg.eigvals(a)).max()


def random_bundle(rng: np.random.Generator, r: int = 1, d: int = 2, width: int = 3, wavelets: int = 1) -> MaskBundle:
    """Random mask whose zeroth moments are forced to
    ``A + B = S diag(1, mu, ...) S^-1`` and ``A - B = U`` with every
    eigenvalue other than 1 inside a disk of radius 0.8.
    """
    ks = range(-width, width + 1)
    pos = {k: rng.uniform(-1, 1, (r, r)) for k in ks}
    neg = {k: rng.uniform(-1, 1, (r, r)) for k in ks}
    root = np.sqrt(d)
    A = sum(pos.values()) / root
    B = sum(neg.values()) / root

    while True:
        S = rng.uniform(-1, 1, (r, r)) + 2 * np.eye(r)
        if np.linalg.cond(S) < 20:
            break
    mu = rng.uniform(-0.8, 0.8, r)
    mu[0] = 1.0
    T = S @ np.diag(mu) @ np.linalg.inv(S)
    U = rng.uniform(-1, 1, (r, r))
    U *= rng.uniform(0.05, 0.8) / max(_spectral_radius(U), 1e-3)

    X = (T - (A + B) + U - (A - B)) / 2
    Y = (T - (A + B) - (U - (A - B))) / 2
    pos[0] = pos[0] + root * X
    neg[0] = neg[0] + root * Y
    scaling = CoefficientMask(d, r, (-width, width), pos, neg, name="random")
    branches = []
    for s in range(1, min(wavelets, d - 1) + 1):
        branches.append(
            WaveletMask(
                s,
                (-width, width),
                {k: rng.uniform(-1, 1, (r, r)) for k in ks},
                {k: rng.uniform(-1, 1, (r, r)) for k in ks},
            )
        )
    return MaskBundle(scaling, tuple(branches))
