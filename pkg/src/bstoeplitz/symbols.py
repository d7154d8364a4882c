"""Rational symbols on the sphere and their covariant Toeplitz matrices.

A symbol is stored through its holomorphic extension in the stereographic
chart, as a finite sum of monomials ``c * z**a * wbar**b / (1 + z*wbar)**m``.
Quantizing such a term against the Bergman kernel of CP^1 reduces to the
closed-form integral below, so matrices are exact up to a final rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    DegreeTooSmall,
    DivergentIntegral,
    InvalidArgument,
    QuadratureNotConverged,
)

__all__ = [
    "SymbolTerm",
    "SymbolExpr",
    "ToeplitzMatrix",
    "closed_form_integral",
    "build_symbol",
    "toeplitz_matrix",
    "toeplitz_quadrature_oracle",
    "operator_matrix",
]


@dataclass(frozen=True)
class SymbolTerm:
    coeff: complex
    a: int
    b: int
    m: int

    def __post_init__(self):
        for name in ("a", "b", "m"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise InvalidArgument(f"{name} must be a nonnegative integer, got {v!r}")
        if not np.isfinite(complex(self.coeff)):
            raise InvalidArgument("coefficient must be finite")
        object.__setattr__(self, "coeff", complex(self.coeff))

    @property
    def shift(self) -> int:
        """Index shift l -> l + shift produced by this term."""
        return self.a - self.b

    def flipped(self) -> SymbolTerm:
        return SymbolTerm(self.coeff.conjugate(), self.b, self.a, self.m)


@dataclass(frozen=True)
class SymbolExpr:
    terms: tuple[SymbolTerm, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def canonical(self) -> SymbolExpr:
        acc: dict[tuple[int, int, int], complex] = {}
        for t in self.terms:
            key = (t.a, t.b, t.m)
            acc[key] = acc.get(key, 0j) + t.coeff
        terms = tuple(SymbolTerm(c, *key) for key, c in sorted(acc.items()) if c != 0)
        return SymbolExpr(terms, self.name)

    def __add__(self, other: SymbolExpr) -> SymbolExpr:
        return SymbolExpr(self.terms + other.terms).canonical()

    def __mul__(self, scalar: complex) -> SymbolExpr:
        return SymbolExpr(
            tuple(SymbolTerm(scalar * t.coeff, t.a, t.b, t.m) for t in self.terms)
        ).canonical()

    __rmul__ = __mul__

    @property
    def max_m(self) -> int:
        return max((t.m for t in self.terms), default=0)

    def is_real(self) -> bool:
        """True when the symbol is real-valued on the sphere (w = z)."""
        mine = self.canonical().terms
        flipped = SymbolExpr(tuple(t.flipped() for t in self.terms)).canonical().terms
        if len(mine) != len(flipped):
            return False
        return all(
            (s.a, s.b, s.m) == (f.a, f.b, f.m) and abs(s.coeff - f.coeff) <= 1e-14 * max(1.0, abs(s.coeff))
            for s, f in zip(mine, flipped)
        )

    def __call__(self, z, wbar):
        """Evaluate the holomorphic extension at (z, wbar)."""
        z = np.asarray(z, dtype=complex)
        wbar = np.asarray(wbar, dtype=complex)
        out = np.zeros(np.broadcast(z, wbar).shape, dtype=complex)
        for t in self.terms:
            out = out + t.coeff * z**t.a * wbar**t.b / (1 + z * wbar) ** t.m
        return out


@dataclass
class ToeplitzMatrix:
    k: int
    entries: np.ndarray
    label: str = ""
    shift_set: frozenset = field(default=None)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.shift_set is None:
            self.shift_set = _shifts_of(self.entries)
        else:
            self.shift_set = frozenset(int(d) for d in self.shift_set)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def _shifts_of(entries: np.ndarray) -> frozenset:
    n = entries.shape[0]
    return frozenset(d for d in range(-n + 1, n) if np.any(np.diagonal(entries, offset=-d) != 0))


@lru_cache(maxsize=4096)
def _fact(n: int) -> int:
    return math.factorial(n)


def _check_integral_args(alpha, beta, gamma, delta):
    for v in (alpha, beta, gamma, delta):
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
            raise InvalidArgument(f"integer arguments expected, got {v!r}")
        if v < 0:
            raise InvalidArgument(f"negative argument {v}")
    if alpha + beta + gamma >= 2 * (delta - 1):
        raise DivergentIntegral(
            f"integral diverges: alpha+beta+gamma={alpha + beta + gamma} >= 2(delta-1)={2 * (delta - 1)}"
        )


def _integral_ratio(alpha: int, beta: int, gamma: int, delta: int) -> Fraction:
    # binom(gamma, alpha-beta) * alpha! (delta-alpha-2)! / (delta-1)!, exactly
    p = alpha - beta
    if p < 0 or p > gamma:
        return Fraction(0)
    return Fraction(
        math.comb(gamma, p) * _fact(alpha) * _fact(delta - alpha - 2), _fact(delta - 1)
    )


def closed_form_integral(alpha: int, beta: int, gamma: int, delta: int) -> tuple[float, int]:
    """Integral of ``w^alpha wbar^beta (1 + z wbar)^gamma / (1+|w|^2)^delta`` over C.

    The result is ``coefficient * z**zpower``; returns ``(coefficient, zpower)``
    and ``(0.0, 0)`` when the angular integration kills every term. The
    combinatorial factor is computed in exact integer arithmetic, so large
    degrees (delta ~ 500 and beyond) neither overflow nor lose digits.
    """
    _check_integral_args(alpha, beta, gamma, delta)
    ratio = _integral_ratio(alpha, beta, gamma, delta)
    if ratio == 0:
        return 0.0, 0
    return 2 * math.pi * float(ratio), alpha - beta


_SYMBOLS = {
    "x3": ((1, 1, 1, 1), (-1, 0, 0, 1)),
    "x1sq": ((1, 2, 0, 2), (2, 1, 1, 2), (1, 0, 2, 2)),
    "ladder": ((2, 1, 0, 1),),
    "one": ((1, 0, 0, 0),),
}


def build_symbol(name: str) -> SymbolExpr:
    """Named symbols: x3, x1sq (= x1**2), ladder (= x1 + i x2), one."""
    try:
        terms = _SYMBOLS[name]
    except KeyError:
        raise InvalidArgument(f"unknown symbol {name!r}; choose from {sorted(_SYMBOLS)}") from None
    return SymbolExpr(tuple(SymbolTerm(*t) for t in terms), name)


def _check_degree(expr: SymbolExpr, k: int):
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidArgument(f"k must be a positive integer, got {k!r}")
    if k < expr.max_m:
        raise DegreeTooSmall(f"degree k={k} is below the symbol's pole order {expr.max_m}")


def toeplitz_matrix(expr: SymbolExpr, k: int) -> ToeplitzMatrix:
    """Matrix of the covariant Toeplitz quantization of ``expr`` in the basis e_l.

    Column l holds the image of e_l; contributions landing outside
    ``0..k`` are dropped.
    """
    _check_degree(expr, k)
    n = k + 1
    mat = np.zeros((n, n), dtype=complex)
    binoms = [math.comb(k, j) for j in range(n)]
    for t in expr.canonical().terms:
        gamma, delta = k - t.m, k + 2
        for ell in range(n):
            _check_integral_args(ell, t.b, gamma, delta)
            ratio = _integral_ratio(ell, t.b, gamma, delta)
            if ratio == 0:
                continue
            row = t.a + ell - t.b
            if not 0 <= row < n:
                continue
            # (k+1)/(2 pi) * integral, then z^row -> e_row renormalization
            sq = (n * ratio) ** 2 * Fraction(binoms[ell], binoms[row])
            mat[row, ell] += t.coeff * math.sqrt(sq)
    return ToeplitzMatrix(k, mat, expr.name or "symbol")


def _gauss_panels(upper: float, panels: int, order: int = 16):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, upper, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def toeplitz_quadrature_oracle(
    expr: SymbolExpr,
    k: int,
    radial_cutoff: float | None = None,
    nodes: int | None = None,
    tol: float = 1e-12,
    max_radial_nodes: int = 8192,
) -> ToeplitzMatrix:
    """Brute-force quadrature of the Bergman integrals defining the Toeplitz matrix.

    Independent of the closed form: the integral is computed in polar
    coordinates (trapezoid in angle, Gauss-Legendre panels in radius under
    ``rho = u / (1 - u)``, doubled until stable) at ``k + 1`` points ``z`` on
    the unit circle, and the polynomial in ``z`` it defines is recovered
    from those samples by a discrete Fourier transform.

    ``nodes`` is the number of angular nodes; ``radial_cutoff`` truncates
    the radial integral (default: none, the map covers the whole plane).
    """
    _check_degree(expr, k)
    if k > 16:
        raise InvalidArgument("the quadrature oracle is meant for k <= 16")
    n = k + 1
    if nodes is None:
        nodes = 64
    if nodes <= 0 or (radial_cutoff is not None and radial_cutoff <= 0):
        raise InvalidArgument("nodes and radial_cutoff must be positive")
    u_max = 1.0 if radial_cutoff is None else radial_cutoff / (1.0 + radial_cutoff)

    theta = 2 * np.pi * np.arange(nodes) / nodes
    zs = np.exp(2j * np.pi * np.arange(n) / n)
    ells = np.arange(n)
    norms = np.sqrt([(k + 1) * math.comb(k, j) / (2 * np.pi) for j in range(n)])
    terms = expr.canonical().terms

    def assemble(panels: int) -> np.ndarray:
        u, wu = _gauss_panels(u_max, panels)
        rho = u / (1 - u)
        # |dw ^ dwbar| = 2 rho drho dtheta
        wr = wu * 2 * rho / (1 - u) ** 2
        w = rho[:, None] * np.exp(1j * theta)[None, :]
        wb = w.conj()
        base = (wr[:, None] * (2 * np.pi / nodes)) / (1 + rho[:, None] ** 2) ** (k + 2)
        out = np.zeros((n, n), dtype=complex)
        for t in terms:
            gamma = k - t.m
            # F[l, q] = integral of w^l wbar^b (1 + z_q wbar)^gamma / (1+|w|^2)^(k+2)
            common = base * wb**t.b
            kern = (1 + zs[:, None, None] * wb[None, :, :]) ** gamma
            wl = w[None, :, :] ** ells[:, None, None]
            F = np.einsum("lrt,qrt->lq", wl * common[None], kern)
            coeffs = F @ zs[:, None] ** (-np.arange(n))[None, :] / n  # [l, p]
            for p in range(min(gamma, k) + 1):
                rows = t.a + p
                if rows >= n:
                    continue
                col = coeffs[:, p] * (k + 1) / (2 * np.pi) * t.coeff
                out[rows, :] += col * norms / norms[rows]
        return out

    panels = 4
    prev = assemble(panels)
    delta = np.inf
    while panels * 16 * 2 <= max_radial_nodes:
        panels *= 2
        cur = assemble(panels)
        delta = float(np.max(np.abs(cur - prev)))
        prev = cur
        if delta <= tol:
            break
    if delta > 1e-8:
        raise QuadratureNotConverged(
            f"oracle refinement still changes entries by {delta:.3e} at {panels * 16} radial nodes"
        )
    return ToeplitzMatrix(k, prev, f"oracle:{expr.name or 'symbol'}")


def operator_matrix(family: str, k: int, eps: float) -> ToeplitzMatrix:
    """The operator families used in the sphere example.

    ``T``: quantization of x3 + i eps x1**2 at degree k (size k+1).
    ``S``: the half-form corrected family on degree k-1 (size k), whose
    normalized subprincipal symbol vanishes.
    ``ladder``: quantization of x1 + i x2 (nilpotent raising matrix).
    """
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise InvalidArgument(f"k must be an integer, got {k!r}")
    eps = float(eps)
    if family == "T":
        if k < 2:
            raise DegreeTooSmall("family T needs k >= 2")
        x3 = toeplitz_matrix(build_symbol("x3"), k).entries
        x1sq = toeplitz_matrix(build_symbol("x1sq"), k).entries
        mat = x3 + 1j * eps * x1sq
    elif family == "S":
        if k < 3:
            raise DegreeTooSmall("family S needs k >= 3")
        x3 = toeplitz_matrix(build_symbol("x3"), k - 1).entries
        x1sq = toeplitz_matrix(build_symbol("x1sq"), k - 1).entries
        mat = (1 - 1 / k) * x3 + 1j * eps * (1 - 3 / k) * x1sq + (1j * eps / k) * np.eye(k)
    elif family == "ladder":
        if k < 2:
            raise DegreeTooSmall("family ladder needs k >= 2")
        mat = toeplitz_matrix(build_symbol("ladder"), k).entries
    else:
        raise InvalidArgument(f"unknown operator family {family!r}")
    label = family if family == "ladder" else f"{family}(eps={eps!r})"
    return ToeplitzMatrix(k, mat, label)
