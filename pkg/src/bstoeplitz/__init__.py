"""Spectra of non-self-adjoint Berezin-Toeplitz operators on the sphere and
their complex Bohr-Sommerfeld approximations."""

from .action import ActionResult, action_derivative, action_integral, level_residual, wbar_plus
from .bs import BSSolution, bs_solve, bs_spectrum
from .compare import ComparisonReport, compare_pipeline, convergence_study, match_spectra
from .errors import *  # noqa: F401,F403
from .spectra import Spectrum, eigenvalues, parity_blocks, power_norm, resolvent_norm
from .symbols import (
    SymbolExpr,
    SymbolTerm,
    ToeplitzMatrix,
    build_symbol,
    closed_form_integral,
    operator_matrix,
    toeplitz_matrix,
    toeplitz_quadrature_oracle,
)

__version__ = "0.1.0"
