"""Bohr-Sommerfeld quantization by Newton iteration on the complex action."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .action import EPS_MAX, action_derivative, action_integral
from .errors import InvalidArgument, NonConvergence, SpectralError, WindowViolation

__all__ = ["BSSolution", "bs_target", "bs_seed", "bs_solve", "bs_spectrum", "VARIANTS"]

VARIANTS = ("principal", "halfform")
CONTINUATION_STEPS = 4
MAX_NEWTON = 50
RESIDUAL_TOL = 1e-10
SEED_LIMIT = 0.9
# index of the half-form line bundle on the single connected level component
HALFFORM_INDEX = 1


@dataclass(frozen=True)
class BSSolution:
    j: int
    variant: str
    lam: complex
    iterations: int
    final_residual: float
    k: int
    eps: float
    continuation_steps: int = CONTINUATION_STEPS
    outside_window: bool = False
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _check_variant(variant):
    if variant not in VARIANTS:
        raise InvalidArgument(f"variant must be one of {VARIANTS}, got {variant!r}")


def bs_target(j: int, variant: str, k: int) -> float:
    """Value the action must take: 2 pi j / k, shifted by -pi/k for the half-form rule."""
    _check_variant(variant)
    if variant == "principal":
        return 2 * math.pi * j / k
    return (2 * j - HALFFORM_INDEX) * math.pi / k


def bs_seed(j: int, variant: str, k: int) -> float:
    # at eps = 0 the action is pi (1 + lam)
    return bs_target(j, variant, k) / math.pi - 1


def _newton(lam, target, eps, tol, quad_tol):
    for it in range(MAX_NEWTON + 1):
        res = action_integral(lam, eps, tol=quad_tol).value - target
        if abs(res) <= tol:
            return lam, it, abs(res)
        if it == MAX_NEWTON:
            break
        lam = lam - res / action_derivative(lam, eps, tol=quad_tol)
    raise NonConvergence(
        f"Newton on the action stalled at lam={lam} (residual {abs(res):.3e}, eps={eps})"
    )


def bs_solve(
    k: int, eps: float, j: int, variant: str = "principal", quad_tol: float = 1e-12
) -> BSSolution:
    """Solve the quantization condition for quantum number ``j``.

    Starts from the exact eps = 0 solution and follows it to ``eps`` in
    four continuation steps, re-solving at each one.
    """
    _check_variant(variant)
    if not isinstance(k, int) or k < 1:
        raise InvalidArgument(f"k must be a positive integer, got {k!r}")
    if abs(eps) > EPS_MAX:
        raise WindowViolation(f"|eps| = {abs(eps)} exceeds the validity policy {EPS_MAX}")
    target = bs_target(j, variant, k)
    lam = complex(bs_seed(j, variant, k))
    if abs(lam) > SEED_LIMIT:
        raise WindowViolation(f"seed lam0={lam.real:+.4f} for j={j} lies outside |lam0| <= {SEED_LIMIT}")
    iterations = 0
    residual = 0.0
    for step in range(1, CONTINUATION_STEPS + 1):
        lam, its, residual = _newton(lam, target, eps * step / CONTINUATION_STEPS, RESIDUAL_TOL, quad_tol)
        iterations += its
    return BSSolution(j, variant, lam, iterations, residual, k, float(eps))


def _seed_range(k, variant, half_width):
    shift = 0 if variant == "principal" else HALFFORM_INDEX
    # seed (2j - shift - k) / k in [-w, w]
    lo = math.ceil((k * (1 - half_width) + shift) / 2 - 1e-9)
    hi = math.floor((k * (1 + half_width) + shift) / 2 + 1e-9)
    return range(lo, hi + 1)


def bs_spectrum(
    k: int,
    eps: float,
    variant: str = "principal",
    window_half_width: float = 0.8,
    quad_tol: float = 1e-12,
    workers: int = 1,
) -> list[BSSolution]:
    """Solve for every j whose seed lies in ``|lam0| <= window_half_width``.

    A failing j is reported in-band through ``BSSolution.error``. Solutions
    drifting beyond 1.05 times the window are kept and flagged.
    """
    _check_variant(variant)
    if not 0 < window_half_width <= SEED_LIMIT:
        raise InvalidArgument(f"window half-width must lie in (0, {SEED_LIMIT}]")

    def one(j):
        try:
            sol = bs_solve(k, eps, j, variant, quad_tol)
        except SpectralError as exc:
            return BSSolution(j, variant, complex("nan"), 0, math.inf, k, float(eps),
                              error=f"{type(exc).__name__}: {exc}")
        drift = abs(sol.lam.real) > 1.05 * window_half_width
        return BSSolution(**{**sol.__dict__, "outside_window": drift})

    js = list(_seed_range(k, variant, window_half_width))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            sols = list(pool.map(one, js))
    else:
        sols = [one(j) for j in js]
    return sorted(sols, key=lambda s: (math.isnan(s.lam.real), s.lam.real, s.j))
