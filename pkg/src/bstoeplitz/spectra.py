"""Spectra, parity splitting and resolvent probes for Toeplitz matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotParityPreserving, NumericalFailure
from .symbols import ToeplitzMatrix

__all__ = [
    "Spectrum",
    "sort_canonical",
    "eigenvalues",
    "parity_blocks",
    "resolvent_norm",
    "power_norm",
]


def sort_canonical(values) -> np.ndarray:
    """Sort complex numbers by real part, ties broken by imaginary part."""
    values = np.asarray(values, dtype=complex).ravel()
    order = np.lexsort((values.imag, values.real))
    return values[order]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    k: int
    label: str = ""

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)


def _as_array(mat) -> np.ndarray:
    return mat.entries if isinstance(mat, ToeplitzMatrix) else np.asarray(mat, dtype=complex)


def eigenvalues(mat) -> Spectrum:
    """All eigenvalues of a dense (possibly non-normal) matrix, canonically sorted.

    Delegates to LAPACK's balanced QR algorithm. Hermitian input takes the
    symmetric solver so the spectrum comes back exactly real.
    """
    a = _as_array(mat)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NumericalFailure(f"square matrix expected, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericalFailure("matrix has non-finite entries")
    try:
        if np.array_equal(a, a.conj().T):
            vals = scipy.linalg.eigvalsh(a).astype(complex)
        else:
            vals = scipy.linalg.eigvals(a, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"eigenvalue iteration failed: {exc}") from exc
    k = mat.k if isinstance(mat, ToeplitzMatrix) else a.shape[0] - 1
    label = mat.label if isinstance(mat, ToeplitzMatrix) else ""
    return Spectrum(sort_canonical(vals), k, label)


def parity_blocks(mat: ToeplitzMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Restrictions of a parity-preserving matrix to even and odd indices."""
    if not isinstance(mat, ToeplitzMatrix):
        mat = ToeplitzMatrix(np.shape(mat)[0] - 1, mat)
    odd_shifts = sorted(d for d in mat.shift_set if d % 2)
    if odd_shifts:
        raise NotParityPreserving(f"matrix couples indices by odd shifts {odd_shifts}")
    a = mat.entries
    even = a[0::2, 0::2].copy()
    odd = a[1::2, 1::2].copy()
    return even, odd


def block_eigenvalues(mat: ToeplitzMatrix) -> Spectrum:
    """Spectrum assembled from the two parity blocks (cheaper for banded T and S)."""
    even, odd = parity_blocks(mat)
    vals = np.concatenate([eigenvalues(even).eigenvalues, eigenvalues(odd).eigenvalues])
    return Spectrum(sort_canonical(vals), mat.k, mat.label)


def resolvent_norm(mat, lam: complex) -> float:
    """Operator 2-norm of (mat - lam)^-1, i.e. 1 / sigma_min; inf if singular."""
    a = _as_array(mat)
    shifted = a - lam * np.eye(a.shape[0])
    smin = scipy.linalg.svdvals(shifted)[-1]
    if smin == 0 or 1.0 / smin == np.inf:
        return np.inf
    return float(1.0 / smin)


def power_norm(mat, p: int) -> float:
    """Frobenius norm of mat**p by repeated multiplication."""
    a = _as_array(mat)
    if p < 1 or p > 4 * a.shape[0]:
        raise ValueError(f"power p={p} outside 1..{4 * a.shape[0]}")
    acc = a.copy()
    for _ in range(p - 1):
        acc = acc @ a
    return float(np.linalg.norm(acc, "fro"))
