"""Matching approximate eigenvalues against exact spectra, and convergence fits."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .bs import bs_spectrum
from .errors import CountMismatch, InvalidArgument
from .spectra import block_eigenvalues, sort_canonical
from .symbols import operator_matrix

__all__ = [
    "ComparisonReport",
    "match_spectra",
    "compare_pipeline",
    "fit_slope",
    "convergence_study",
    "DRIFT_MARGIN",
]

DRIFT_MARGIN = 1.05


@dataclass
class ComparisonReport:
    pairs: list[tuple[complex, complex, float]]
    max_error: float
    mean_error: float
    exact_count_in_window: int
    bs_count_in_window: int
    k: int | None = None
    eps: float | None = None
    variant: str | None = None
    window: float | None = None
    exact: list[complex] = field(default_factory=list)
    approx: list[complex] = field(default_factory=list)


def match_spectra(exact, approx) -> ComparisonReport:
    """Minimum-total-distance one-to-one assignment of exact values to approximations."""
    exact = sort_canonical(exact)
    approx = sort_canonical(approx)
    if len(exact) == 0 or len(approx) == 0:
        raise InvalidArgument("both eigenvalue lists must be nonempty")
    if len(exact) > len(approx):
        raise CountMismatch(f"{len(exact)} exact eigenvalues but only {len(approx)} approximations")
    cost = np.abs(exact[:, None] - approx[None, :])
    rows, cols = linear_sum_assignment(cost)
    pairs = [(complex(exact[r]), complex(approx[c]), float(cost[r, c])) for r, c in zip(rows, cols)]
    dist = np.array([p[2] for p in pairs])
    return ComparisonReport(
        pairs=pairs,
        max_error=float(dist.max()),
        mean_error=float(dist.mean()),
        exact_count_in_window=len(exact),
        bs_count_in_window=len(approx),
        exact=list(exact),
        approx=list(approx),
    )


def _family(variant):
    return "T" if variant == "principal" else "S"


def compare_pipeline(
    k: int, eps: float, variant: str = "principal", window: float = 0.8, quad_tol: float = 1e-12
) -> ComparisonReport:
    """Exact spectrum of T (principal) or S (half-form) against the matching BS rule.

    Exact eigenvalues with ``|Re lam| <= window`` are matched against BS
    solutions computed on a window widened by 5%.
    """
    mat = operator_matrix(_family(variant), k, eps)
    exact = block_eigenvalues(mat).eigenvalues
    exact_in = exact[np.abs(exact.real) <= window]
    sols = bs_spectrum(k, eps, variant, min(window * DRIFT_MARGIN, 0.9), quad_tol)
    approx = np.array([s.lam for s in sols if s.ok])
    report = match_spectra(exact_in, approx)
    report.bs_count_in_window = int(np.sum(np.abs(approx.real) <= window))
    report.k, report.eps, report.variant, report.window = k, float(eps), variant, window
    return report


def fit_slope(ks, errors) -> float:
    """Least-squares slope of log(error) against log(k)."""
    ks = np.asarray(ks, dtype=float)
    errors = np.asarray(errors, dtype=float)
    return float(np.polyfit(np.log(ks), np.log(errors), 1)[0])


def convergence_study(
    ks, eps: float, variant: str = "principal", window: float = 0.8,
    quad_tol: float = 1e-12, workers: int = 1,
) -> dict:
    """Max matching error per k and its fitted power of k."""
    ks = [int(k) for k in ks]
    if len(ks) < 3 or any(b <= a for a, b in zip(ks, ks[1:])):
        raise InvalidArgument("ks must be strictly increasing with at least 3 entries")

    def leg(k):
        return compare_pipeline(k, eps, variant, window, quad_tol).max_error

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            errs = list(pool.map(leg, ks))
    else:
        errs = [leg(k) for k in ks]
    return {"table": list(zip(ks, errs)), "slope": fit_slope(ks, errs)}
