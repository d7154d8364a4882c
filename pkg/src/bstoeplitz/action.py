"""Complex action of the level curves of x3 + i eps x1**2 on the sphere.

On the complex level set ``{p(z, wbar) = lam}`` the second coordinate is
a root of the quadratic ``A wbar**2 + B wbar + C = 0`` with

    A = (1 - lam) z**2 + i eps,   B = 2 z (i eps - lam),   C = i eps z**2 - 1 - lam.

The action is the integral of ``i (z dwbar - wbar dz) / (2 (1 + z wbar))``
over the cycle ``z = rho exp(i theta)``, with wbar following the sheet that
reduces to ``conj(z)`` on the real level circle when eps = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BranchPinch,
    PoleOnLocus,
    QuadratureNotConverged,
    RootAtInfinity,
    WindowViolation,
)

__all__ = [
    "ActionResult",
    "level_coefficients",
    "level_residual",
    "level_roots",
    "wbar_plus",
    "contour_radius",
    "action_integral",
    "action_derivative",
    "EPS_MAX",
    "HOMOTOPY_STEPS",
]

EPS_MAX = 0.5
HOMOTOPY_STEPS = 16
MIN_NODES = 64
MAX_NODES = 65536


@dataclass(frozen=True)
class ActionResult:
    value: complex
    nodes_used: int
    last_delta: float
    contour_radius: float
    homotopy_steps: int = HOMOTOPY_STEPS


def level_coefficients(z, lam: complex, eps: float):
    """Coefficients (A, B, C) of the level quadratic in wbar, and their z-derivatives."""
    z = np.asarray(z, dtype=complex)
    ie = 1j * eps
    A = (1 - lam) * z**2 + ie
    B = 2 * z * (ie - lam)
    C = ie * z**2 - 1 - lam
    dA = 2 * (1 - lam) * z
    dB = 2 * (ie - lam) * np.ones_like(z)
    dC = 2 * ie * z
    return (A, B, C), (dA, dB, dC)


def _symbol(z, wbar, eps):
    s = 1 + z * wbar
    return (z * wbar - 1) / s + 1j * eps * (z + wbar) ** 2 / s**2


def level_residual(z: complex, wbar: complex, lam: complex, eps: float) -> complex:
    """p(z, wbar) - lam from the rational expression of the extended symbol."""
    if abs(1 + z * wbar) < 1e-14:
        raise PoleOnLocus(f"1 + z*wbar vanishes at z={z}, wbar={wbar}")
    return complex(_symbol(complex(z), complex(wbar), eps) - lam)


def level_roots(z, lam: complex, eps: float):
    """Both roots of the level quadratic, computed without cancellation.

    Returns ``(r1, r2, disc_sqrt)``; raises on a vanishing leading
    coefficient or a (near) double root.
    """
    (A, B, C), _ = level_coefficients(z, lam, eps)
    scale = np.abs(A) + np.abs(B) + np.abs(C)
    if np.any(np.abs(A) <= 1e-13 * np.maximum(scale, 1.0)):
        raise RootAtInfinity("leading coefficient of the level quadratic vanishes")
    disc = B * B - 4 * A * C
    if np.any(np.abs(disc) <= 1e-13 * (np.abs(A) ** 2 + np.abs(B) ** 2 + np.abs(C) ** 2)):
        raise BranchPinch("the two sheets of the level curve collide")
    s = np.sqrt(disc)
    s = np.where((B.conj() * s).real >= 0, s, -s)
    q = -(B + s) / 2
    return q / A, C / q, s


def _nearest(r1, r2, target):
    return np.where(np.abs(r1 - target) <= np.abs(r2 - target), r1, r2)


def _flat_sheet(z, lam):
    # eps = 0: z wbar = (1 + lam) / (1 - lam), which is conj(z) on the real level circle
    return (1 + lam) / (1 - lam) / z


def wbar_plus(z: complex, lam: complex, eps: float, hint: complex | None = None) -> complex:
    """The root wbar of the level quadratic on the sheet carrying the action.

    With ``hint`` the root nearer the hint is returned. Otherwise the root
    is continued in eps from the eps = 0 sheet in equal steps.
    """
    z = complex(z)
    r1, r2, _ = level_roots(z, lam, eps)
    if hint is not None:
        return complex(_nearest(r1, r2, hint))
    level_roots(z, lam, 0.0)
    w = _flat_sheet(z, lam)
    for step in range(1, HOMOTOPY_STEPS + 1):
        r1, r2, _ = level_roots(z, lam, eps * step / HOMOTOPY_STEPS)
        w = complex(_nearest(r1, r2, w))
    return w


def contour_radius(lam: complex) -> float:
    x = complex(lam).real
    if not abs(x) < 1:
        raise WindowViolation(f"|Re lam| = {abs(x)} must be < 1 for the action cycle")
    return float(np.sqrt((1 + x) / (1 - x)))


def _track(z, lam, eps, seed):
    """Follow one sheet of the level curve along the closed polygon z[0..N-1]."""
    r1, r2, s = level_roots(z, lam, eps)
    # make the discriminant root continuous along the loop; the sheets are (-B +- s) / 2A
    flips = np.ones(len(s))
    flips[1:] = np.where((s[1:] * s[:-1].conj()).real < 0, -1.0, 1.0)
    sc = s * np.cumprod(flips)
    if (sc[0] * sc[-1].conj()).real < 0:
        raise BranchPinch("the cycle winds around a branch point: sheets swap after one turn")
    (A, B, _), _ = level_coefficients(z, lam, eps)
    plus = (-B + sc) / (2 * A)
    minus = (-B - sc) / (2 * A)
    sheet = plus if abs(plus[0] - seed) <= abs(minus[0] - seed) else minus
    # replace the naive roots by the cancellation-free ones on the same sheet
    w = _nearest(r1, r2, sheet)
    other = np.where(w == r1, r2, r1)
    prev = np.roll(w, 1)
    if np.any(np.abs(w - prev) >= np.abs(other - prev)):
        raise BranchPinch("sheets are too close to be told apart along the cycle")
    return w


def _integrand(z, w, lam, eps):
    (A, B, _), (dA, dB, dC) = level_coefficients(z, lam, eps)
    dw = -(dA * w**2 + dB * w + dC) / (2 * A * w + B)
    pole = 1 + z * w
    if np.any(np.abs(pole) < 1e-14):
        raise PoleOnLocus("the cycle passes through the pole 1 + z wbar = 0")
    # alpha = i (z dwbar - wbar dz) / (2 (1 + z wbar)),  dz = i z dtheta
    return -z * (z * dw - w) / (2 * pole)


def action_integral(
    lam: complex,
    eps: float,
    tol: float = 1e-12,
    radius_scale: float = 1.0,
    max_nodes: int = MAX_NODES,
) -> ActionResult:
    """Action of the level cycle through |z| = radius_scale * rho0(Re lam).

    Periodic trapezoid rule with node doubling from 64 nodes until two
    successive values agree to ``tol``.
    """
    lam = complex(lam)
    if abs(eps) > EPS_MAX:
        raise WindowViolation(f"|eps| = {abs(eps)} exceeds the validity policy {EPS_MAX}")
    rho = radius_scale * contour_radius(lam)
    seed = wbar_plus(rho, lam, eps)

    def trapezoid(n):
        z = rho * np.exp(2j * np.pi * np.arange(n) / n)
        w = _track(z, lam, eps, seed)
        return complex(np.mean(_integrand(z, w, lam, eps)) * 2 * np.pi)

    n = MIN_NODES
    prev = trapezoid(n)
    while n < max_nodes:
        n *= 2
        cur = trapezoid(n)
        delta = abs(cur - prev)
        prev = cur
        if delta <= tol:
            return ActionResult(cur, n, delta, rho)
    raise QuadratureNotConverged(
        f"action at lam={lam}, eps={eps} still moves by {delta:.3e} at {n} nodes"
    )


def action_derivative(
    lam: complex, eps: float, direction: complex = 1.0, tol: float = 1e-12
) -> complex:
    """dI/dlam by a central difference along ``direction`` (a unit complex number)."""
    lam = complex(lam)
    h = 1e-6 * (1 + abs(lam)) * direction
    up = action_integral(lam + h, eps, tol=tol).value
    down = action_integral(lam - h, eps, tol=tol).value
    return (up - down) / (2 * h)
