"""
Dense complex-matrix kernel.

Hermitian eigendecomposition and everything built on it: functional calculus,
resolvents, spectral projections, the matrix exponential and the unitary logarithm,
polar decomposition, the Cayley transform and the real/imaginary split.

All functions are pure; inputs are never modified and results are fresh arrays.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from mvnlab.exceptions import DimensionMismatch, NotHermitian, NotUnitary, SpectralObstruction

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-9
CAYLEY_TOL = 1e-8
# eigenvalues this close to -1 take the phase +pi
BRANCH_TOL = 1e-12
# eigenvalues of |A| at or below this, relative to max(‖A‖, 1), span its kernel
KERNEL_TOL = 1e-12

RealFunction = Callable[[np.ndarray], np.ndarray]


def as_matrix(a: np.ndarray | complex | float) -> np.ndarray:
    """
    Coerce input to a finite square complex matrix.

    Scalars become 1x1 matrices.

    Raises:
        DimensionMismatch: If the input is not square or has non-finite entries
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionMismatch("matrix has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conjugate(np.swapaxes(a, -1, -2))


def op_norm(a: np.ndarray) -> float:
    """Operator (spectral) norm."""
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, ord=2))


def hermiticity_residual(a: np.ndarray) -> float:
    """Relative deviation ``‖A − A*‖_F / (1 + ‖A‖_F)``."""
    return float(np.linalg.norm(a - dagger(a)) / (1.0 + np.linalg.norm(a)))


def skewness_residual(a: np.ndarray) -> float:
    """Relative deviation ``‖A + A*‖_F / (1 + ‖A‖_F)``."""
    return float(np.linalg.norm(a + dagger(a)) / (1.0 + np.linalg.norm(a)))


def unitarity_residual(u: np.ndarray) -> float:
    """``‖u*u − I‖_F``."""
    return float(np.linalg.norm(dagger(u) @ u - np.eye(u.shape[0])))


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_residual(a) <= tol


def is_skew_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return skewness_residual(a) <= tol


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return unitarity_residual(u) <= tol


@dataclass(frozen=True)
class SpectralDecomp:
    """
    Spectral resolution ``A = U diag(λ) U*`` of a Hermitian matrix.

    Attributes:
        eigenvalues: Real eigenvalues in ascending order
        basis: Unitary matrix whose columns are the matching eigenvectors
    """

    eigenvalues: np.ndarray
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def apply(self, f: RealFunction) -> np.ndarray:
        """Return ``U diag(f(λ)) U*``."""
        values = _evaluate(f, self.eigenvalues)
        return (self.basis * values) @ dagger(self.basis)

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.eigenvalues) @ dagger(self.basis)


def _evaluate(f: RealFunction, lams: np.ndarray) -> np.ndarray:
    values = np.asarray(f(lams), dtype=np.complex128)
    if values.shape != lams.shape:
        # f is scalar-only or returned a broadcast constant
        values = np.array([complex(f(lam)) for lam in lams], dtype=np.complex128)
    return values


def hermitian_eig(a: np.ndarray, tol: float = HERMITIAN_TOL) -> SpectralDecomp:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        a: Square matrix with ``‖A − A*‖_F ≤ tol·(1+‖A‖_F)``
        tol: Relative Hermiticity tolerance

    Returns:
        SpectralDecomp with ascending eigenvalues

    Raises:
        NotHermitian: If the precondition fails
    """
    m = as_matrix(a)
    residual = hermiticity_residual(m)
    if residual > tol:
        raise NotHermitian(f"matrix is not Hermitian: residual {residual:.3e} > {tol:.1e}")
    eigenvalues, basis = la.eigh((m + dagger(m)) / 2.0)
    return SpectralDecomp(eigenvalues=np.asarray(eigenvalues, dtype=np.float64), basis=basis)


def func_calc(f: RealFunction, a: np.ndarray) -> np.ndarray:
    """
    Functional calculus ``f(A) = U diag(f(λ)) U*`` for Hermitian ``A``.

    ``f`` receives the eigenvalue array and should return an array of the same
    shape; scalar-only callables are also accepted.
    """
    return hermitian_eig(a).apply(f)


def resolvent(a: np.ndarray, z: complex = 1j) -> np.ndarray:
    """``(A − z)^{-1}`` for Hermitian ``A`` and non-real ``z``."""
    if z.imag == 0:
        raise SpectralObstruction("resolvent point must be non-real")
    return func_calc(lambda lam: 1.0 / (lam - z), a)


def indicator(a: float, b: float) -> RealFunction:
    """Indicator of the open interval ``(a, b)``."""

    def _indicator(lam: np.ndarray) -> np.ndarray:
        lam = np.asarray(lam, dtype=np.float64)
        return ((lam > a) & (lam < b)).astype(np.float64)

    return _indicator


def spectral_projection(a: np.ndarray, lower: float, upper: float) -> np.ndarray:
    """Spectral projection ``E_A((lower, upper))``."""
    return func_calc(indicator(lower, upper), a)


def matrix_exp(a: np.ndarray) -> np.ndarray:
    """
    Matrix exponential.

    Skew-Hermitian input goes through the eigendecomposition of ``−iA`` so the
    result is unitary to working precision; anything else uses scaling and squaring.
    """
    m = as_matrix(a)
    if is_skew_hermitian(m):
        spectral = hermitian_eig((-1j * m + dagger(-1j * m)) / 2.0)
        return spectral.apply(lambda lam: np.exp(1j * lam))
    return la.expm(m)


def unitary_phases(u: np.ndarray, tol: float = UNITARY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigenphases in ``(−π, π]`` and an eigenbasis of a unitary matrix.

    Raises:
        NotUnitary: If ``‖u*u − I‖_F > tol``
    """
    m = as_matrix(u)
    residual = unitarity_residual(m)
    if residual > tol:
        raise NotUnitary(f"matrix is not unitary: residual {residual:.3e} > {tol:.1e}")
    # complex Schur form of a normal matrix is diagonal
    t, z = la.schur(m, output="complex")
    phases = np.angle(np.diag(t))
    phases = np.where(phases <= -np.pi + BRANCH_TOL, phases + 2.0 * np.pi, phases)
    return phases, z


def matrix_log_unitary(u: np.ndarray) -> np.ndarray:
    """
    Principal logarithm of a unitary matrix.

    Returns a skew-Hermitian ``A`` with eigenphases in ``(−π, π]`` and
    ``exp(A) = u``; the eigenvalue −1 maps to ``+iπ``.

    Raises:
        NotUnitary: If the input is not unitary within 1e-9
    """
    phases, z = unitary_phases(u)
    log = (z * (1j * phases)) @ dagger(z)
    return (log - dagger(log)) / 2.0


def polar_decompose(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Right polar decomposition ``A = u·p`` with ``p = (A*A)^{1/2}``.

    ``u`` is the partial isometry vanishing on ``ker p``: unitary for invertible ``A``,
    otherwise an isometry from the range of ``p`` onto the range of ``A``. Eigenvalues
    of ``p`` up to ``KERNEL_TOL·max(‖p‖, 1)`` count as kernel.
    """
    m = as_matrix(a)
    u, p = la.polar(m, side="right")
    p = (p + dagger(p)) / 2.0
    cutoff = KERNEL_TOL * max(float(np.linalg.norm(p, 2)), 1.0)
    support = spectral_projection(p, cutoff, math.inf)
    return u @ support, p


def cayley_transform(t: np.ndarray) -> np.ndarray:
    """Cayley transform ``(T − i)(T + i)^{-1}`` of a Hermitian matrix; always unitary."""
    return func_calc(lambda lam: (lam - 1j) / (lam + 1j), t)


def cayley_inverse(u: np.ndarray, tol: float = CAYLEY_TOL) -> np.ndarray:
    """
    Inverse Cayley transform ``T = i(1 + u)(1 − u)^{-1}``.

    Raises:
        NotUnitary: If ``u`` is not unitary
        SpectralObstruction: If 1 is an eigenvalue of ``u`` within ``tol``
    """
    m = as_matrix(u)
    residual = unitarity_residual(m)
    if residual > UNITARY_TOL:
        raise NotUnitary(f"Cayley inverse needs a unitary input: residual {residual:.3e}")
    distance = float(np.min(np.abs(la.eigvals(m) - 1.0)))
    if distance <= tol:
        raise SpectralObstruction(f"1 is in the spectrum of u (distance {distance:.3e}); inverse undefined")
    identity = np.eye(m.shape[0], dtype=np.complex128)
    t = la.solve(identity - m, 1j * (identity + m))
    return (t + dagger(t)) / 2.0


def cayley_pair(t: np.ndarray) -> tuple[np.ndarray, Callable[[np.ndarray], np.ndarray]]:
    """Forward Cayley transform of ``T`` together with the inverse map."""
    return cayley_transform(t), cayley_inverse


def re_im_split(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian parts ``Re = (A + A*)/2`` and ``Im = (A − A*)/(2i)`` with ``A = Re + i·Im``."""
    m = as_matrix(a)
    adj = dagger(m)
    return (m + adj) / 2.0, (m - adj) / 2.0j


__all__ = [
    "HERMITIAN_TOL",
    "UNITARY_TOL",
    "CAYLEY_TOL",
    "SpectralDecomp",
    "as_matrix",
    "dagger",
    "op_norm",
    "hermiticity_residual",
    "skewness_residual",
    "unitarity_residual",
    "is_hermitian",
    "is_skew_hermitian",
    "is_unitary",
    "hermitian_eig",
    "func_calc",
    "resolvent",
    "indicator",
    "spectral_projection",
    "matrix_exp",
    "unitary_phases",
    "matrix_log_unitary",
    "polar_decompose",
    "cayley_transform",
    "cayley_inverse",
    "cayley_pair",
    "re_im_split",
]
