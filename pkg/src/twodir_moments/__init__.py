"""Moments of two-direction multiscaling functions and multiwavelets."""

__version__ = "0.1.0"

from .analysis import (
    ComparisonReport,
    SampledFunction,
    cascade_samples,
    compare_methods,
    compare_moments,
    quadrature_moment,
    vanishing_moments,
)
from .discrete import DiscreteMomentSet, discrete_moment_phi, discrete_moment_psi
from .doubling import DoubledMoments, extract_upper, moments_by_doubling
from .errors import (
    ConditionEError,
    EigenvalueError,
    ExprError,
    MaskFormatError,
    MomentError,
    SingularSystemError,
)
from .expr import parse_const_expr
from .masks import CoefficientMask, MaskBundle, ValidationReport, WaveletMask, doubled_mask_at_one, validate
from .maskio import load_mask, resolve_mask, save_mask
from .separation import SeparatedMoments, closed_form_check, moments_by_separation
from .spectral import ConditionEReport, condition_e, eigenvalues, solve, unit_eigvec
