"""Explicit inverses of the finite-difference beam matrices and the fixed-point solver built on them."""

from .assembly import CC, CF, BeamProblem, BoundaryKind, PentaBands, assemble, assemble_T, assemble_U
from .explicit_inverse import (
    ExplicitInverse,
    InversePath,
    cc_inverse,
    cc_inverse_entry,
    cc_inverse_sherman_morrison,
    cf_inverse,
    cf_inverse_entry,
    explicit_inverse,
    m_block,
    t_inverse_entry,
)
from .fixed_point import IterationConfig, IterationTrace, check_monotone_cf, iterate, residual
from .norms import NormReport, brute_force_norm, cc_norm_bound, cf_norm_formula, lipschitz, norm_report

__version__ = "0.1.0"
