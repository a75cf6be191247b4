import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import EX52, S7
from helpers import random_bundle
from twodir_moments.discrete import discrete_moment_phi
from twodir_moments.masks import CoefficientMask, MaskBundle, WaveletMask, doubled_mask_at_one, validate


def scalar_mask(**kw):
    base = dict(dilation=2, multiplicity=1, support=(0, 1), positive={0: [[0.5]]}, negative={1: [[0.5]]})
    base.update(kw)
    return CoefficientMask(**base)


def test_examples_validate(ex51, ex52):
    assert validate(ex51).ok
    assert validate(ex52).ok
    assert ex52.multiplicity == 2 and ex52.dilation == 2


def test_dimension_mismatch():
    mask = CoefficientMask(2, 2, (0, 1), positive={0: np.ones((2, 1))})
    report = validate(MaskBundle(mask))
    assert not report.ok
    assert any("dimension mismatch" in v for v in report.violations)


def test_non_finite_entry():
    report = validate(MaskBundle(scalar_mask(positive={0: [[np.nan]]})))
    assert any("non-finite entry" in v for v in report.violations)


def test_duplicate_branch():
    w = WaveletMask(1, (0, 1), {0: [[1.0]]})
    report = validate(MaskBundle(scalar_mask(dilation=3), (w, w)))
    assert any("duplicate branch" in v for v in report.violations)


def test_empty_support():
    report = validate(MaskBundle(scalar_mask(support=(2, 1), positive={}, negative={})))
    assert any("empty support" in v for v in report.violations)


def test_coefficient_outside_support():
    report = validate(MaskBundle(scalar_mask(positive={5: [[1.0]]})))
    assert any("outside support" in v for v in report.violations)


def test_bad_branch_and_dilation():
    w = WaveletMask(2, (0, 1), {0: [[1.0]]})
    report = validate(MaskBundle(scalar_mask(), (w,)))
    assert any("branch 2 outside" in v for v in report.violations)
    assert not validate(MaskBundle(scalar_mask(dilation=1)))


def test_wavelet_dimension_must_match_parent():
    w = WaveletMask(1, (0, 1), {0: np.eye(2)})
    assert any("dimension mismatch" in v for v in validate(MaskBundle(scalar_mask(), (w,))).violations)


def test_immutable(ex51):
    with pytest.raises(Exception):
        ex51.scaling.dilation = 3
    with pytest.raises(ValueError):
        ex51.scaling.positive[1][0, 0] = 1.0


def test_doubled_mask_example_5_1(ex51):
    expected = np.array([[5 - S7, 3 + S7], [3 + S7, 5 - S7]]) / 8
    np.testing.assert_allclose(doubled_mask_at_one(ex51.scaling), expected, atol=1e-15)


def test_doubled_mask_zero():
    mask = CoefficientMask(2, 2, (0, 0))
    np.testing.assert_array_equal(doubled_mask_at_one(mask), np.zeros((4, 4)))


def test_doubled_mask_example_5_2_eigenvalues(ex52):
    lam = np.sort(np.linalg.eigvals(doubled_mask_at_one(ex52.scaling)).real)
    np.testing.assert_allclose(lam, np.sort(EX52["eig"]), atol=1e-12)


def test_doubled_mask_equals_zeroth_doubled_moment(ex51):
    np.testing.assert_allclose(doubled_mask_at_one(ex51.scaling), discrete_moment_phi(ex51.scaling, 0).doubled, atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(2, 4))
def test_doubled_mask_block_structure(seed, r, d):
    mask = random_bundle(np.random.default_rng(seed), r=r, d=d).scaling
    A = sum(mask.positive.values()) / np.sqrt(d)
    B = sum(mask.negative.values()) / np.sqrt(d)
    np.testing.assert_allclose(doubled_mask_at_one(mask), np.block([[A, B], [B, A]]), atol=1e-12)
