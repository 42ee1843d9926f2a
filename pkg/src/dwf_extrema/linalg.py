"""Small dense complex linear algebra.

``hermitian_eig`` is a cyclic Jacobi solver for complex Hermitian matrices.
The census hot path calls ``eigvalsh_batch`` (LAPACK via numpy); the two are
cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
UNIT_TOL = 1e-12


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray | None = None  # columns aligned with eigenvalues

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    threshold = tol * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                # Remove the phase of a[p, q], then do a real symmetric rotation.
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # J acts on columns p, q: J[p,p]=c, J[q,q]=c, J[p,q]=s*phase, J[q,p]=-s*conj(phase)
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * np.conj(phase) * aq
                a[:, q] = s * phase * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * phase * aq
                a[q, :] = s * np.conj(phase) * ap + c * aq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.real(np.diag(a)).copy(), v


def hermitian_eig(m, vectors: bool = True, tol: float = 1e-14, max_sweeps: int = 100) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius mass is at most ``tol * ||M||_F``.
    Eigenvalues are returned ascending; eigenvector columns follow the same
    order.
    """
    m = as_matrix(m)
    if hermiticity_error(m) > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |M - M^H| = {hermiticity_error(m):.3g})")
    m = 0.5 * (m + m.conj().T)
    w, v = _jacobi(m, tol, max_sweeps)
    order = np.argsort(w, kind="stable")
    w = w[order]
    return Spectrum(w, v[:, order] if vectors else None)


def eigvalsh_batch(mats: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a stack of Hermitian matrices, shape (N, d)."""
    return np.linalg.eigvalsh(mats)


def eigh_batch(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.linalg.eigh(mats)


def _check_unit(v: np.ndarray, tol: float = UNIT_TOL) -> None:
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"vector is not unit norm (|v| = {norm!r})")


def rayleigh(m, v) -> float:
    """<v|M|v> for a unit vector v."""
    m = as_matrix(m)
    v = np.asarray(v, dtype=complex)
    _check_unit(v, 1e-10)
    return float(np.real(np.vdot(v, m @ v)))


def projector(v) -> np.ndarray:
    """Rank-one projector |v><v|."""
    v = np.asarray(v, dtype=complex)
    _check_unit(v, 1e-10)
    return np.outer(v, v.conj())


def trace_product(a, b) -> complex:
    """Tr(A B) without forming the product."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return complex(np.sum(a * b.T))
