"""Symmetric eigendecomposition, graph Fourier transforms, and the
bandlimited least-squares baseline.

The eigensolver is a dependency-free cyclic Jacobi iteration. It is O(n^3)
per sweep, which is perfectly adequate for the dense, desk-scale matrices
this package works with, and it produces an orthonormal eigenbasis to
machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

OFFDIAG_TOL = 1e-11
INPUT_SYMMETRY_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        vals = np.array(self.eigenvalues, dtype=float)
        vecs = np.array(self.eigenvectors, dtype=float)
        if vecs.ndim != 2 or vecs.shape[0] != vecs.shape[1] or vals.shape != (vecs.shape[0],):
            raise ValueError("inconsistent spectrum shapes")
        vals.setflags(write=False)
        vecs.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def eig_sym(m: np.ndarray, tol: float = OFFDIAG_TOL, max_sweeps: int = 60) -> Spectrum:
    """Diagonalize a symmetric matrix with cyclic Jacobi rotations.

    Sweeps stop once every off-diagonal magnitude is below `tol`.
    Raises ValueError if the input is not symmetric (within 1e-10) and
    RuntimeError if the iteration somehow fails to converge.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.size and np.max(np.abs(a - a.T)) > INPUT_SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    a = (a + a.T) / 2.0
    vecs = np.eye(n)
    if n > 1:
        for _ in range(max_sweeps):
            off = np.abs(a - np.diag(np.diag(a))).max()
            if off < tol:
                break
            for p in range(n - 1):
                # candidate columns; entries can change mid-sweep, so re-check
                tail = np.nonzero(np.abs(a[p, p + 1:]) >= tol)[0] + p + 1
                for q in tail:
                    apq = a[p, q]
                    if abs(apq) < tol:
                        continue
                    app = a[p, p]
                    aqq = a[q, q]
                    theta = (aqq - app) / (2.0 * apq)
                    if theta == 0.0:
                        t = 1.0
                    else:
                        t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                    c = 1.0 / math.hypot(1.0, t)
                    s = t * c
                    # two-sided rotation in the (p, q) plane: A <- J^T A J
                    col_p = a[:, p].copy()
                    col_q = a[:, q].copy()
                    a[:, p] = c * col_p - s * col_q
                    a[:, q] = s * col_p + c * col_q
                    row_p = a[p, :].copy()
                    row_q = a[q, :].copy()
                    a[p, :] = c * row_p - s * row_q
                    a[q, :] = s * row_p + c * row_q
                    a[p, p] = app - t * apq
                    a[q, q] = aqq + t * apq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    vec_p = vecs[:, p].copy()
                    vec_q = vecs[:, q].copy()
                    vecs[:, p] = c * vec_p - s * vec_q
                    vecs[:, q] = s * vec_p + c * vec_q
        else:
            raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return Spectrum(values[order], vecs[:, order])


def gft(spectrum: Spectrum, x: np.ndarray) -> np.ndarray:
    """Project a signal onto the spectral basis (V^T x for symmetric operators)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (spectrum.n,):
        raise ValueError(f"signal has length {x.size}, expected {spectrum.n}")
    return spectrum.eigenvectors.T @ x


def igft(spectrum: Spectrum, xt: np.ndarray) -> np.ndarray:
    """Synthesize a signal from its frequency coefficients (V xt)."""
    xt = np.asarray(xt, dtype=float)
    if xt.shape != (spectrum.n,):
        raise ValueError(f"coefficient vector has length {xt.size}, expected {spectrum.n}")
    return spectrum.eigenvectors @ xt


def bandlimited_fit(spectrum: Spectrum, x: np.ndarray, bandwidth: int) -> tuple[np.ndarray, np.ndarray]:
    """Least-squares projection onto the first `bandwidth` basis vectors.

    Returns (coefficients, reconstruction). Because the basis is
    orthonormal this is simply V_K (V_K^T x), the linear reconstruction
    baseline for low-frequency signals.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (spectrum.n,):
        raise ValueError(f"signal has length {x.size}, expected {spectrum.n}")
    if not 1 <= bandwidth <= spectrum.n:
        raise ValueError(f"bandwidth must be in [1, {spectrum.n}], got {bandwidth}")
    basis = spectrum.eigenvectors[:, :bandwidth]
    coeffs = basis.T @ x
    return coeffs, basis @ coeffs
