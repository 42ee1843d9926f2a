"""Discrete Wigner functions over a fixed MUB set and quantum net."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .census import CensusReport, Extrema, geometric_index, iter_indices, point_operator
from .geometry import PhaseSpace
from .linalg import hermiticity_error
from .mub import MubSet

DENSITY_TOL = 1e-10
NONNEG_DEFAULT_MAX_D = 3


@dataclass(frozen=True)
class QuantumNet:
    """Association of striations to bases and, per striation, lines to vectors."""

    striation_to_basis: tuple[int, ...]
    line_to_vector: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.striation_to_basis) - 1
        if sorted(self.striation_to_basis) != list(range(d + 1)):
            raise ValueError("striation_to_basis must be a permutation of 0..d")
        if len(self.line_to_vector) != d + 1:
            raise ValueError("need one line_to_vector map per striation")
        for perm in self.line_to_vector:
            if sorted(perm) != list(range(d)):
                raise ValueError("each line_to_vector map must be a permutation of 0..d-1")

    @property
    def d(self) -> int:
        return len(self.striation_to_basis) - 1

    @classmethod
    def canonical(cls, d: int) -> "QuantumNet":
        return cls(tuple(range(d + 1)), tuple(tuple(range(d)) for _ in range(d + 1)))

    @classmethod
    def random(cls, d: int, rng: np.random.Generator) -> "QuantumNet":
        return cls(
            tuple(int(x) for x in rng.permutation(d + 1)),
            tuple(tuple(int(x) for x in rng.permutation(d)) for _ in range(d + 1)),
        )


def density_matrix(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if hermiticity_error(rho) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho).real:.12g}")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def pure_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj()) / np.vdot(psi, psi).real


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    return psi / np.linalg.norm(psi)


def random_density_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """Ginibre-distributed mixed state."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def point_operators(m: MubSet, ps: PhaseSpace, net: QuantumNet) -> np.ndarray:
    """The d^2 operators of one Wigner function, indexed by point, shape (d^2, d, d)."""
    if not m.d == ps.d == net.d:
        raise ValueError(f"dimension mismatch: MUB d={m.d}, phase space d={ps.d}, net d={net.d}")
    return np.array([point_operator(m, geometric_index(ps, net, pt)) for pt in range(ps.d**2)])


def evaluate(rho, m: MubSet, ps: PhaseSpace, net: QuantumNet | None = None) -> np.ndarray:
    """W_b = Tr(rho A_b) / d at every phase-space point, indexed by point index."""
    net = net or QuantumNet.canonical(ps.d)
    rho = density_matrix(rho)
    if rho.shape[0] != ps.d:
        raise ValueError(f"state of dimension {rho.shape[0]} does not fit phase space of order {ps.d}")
    ops = point_operators(m, ps, net)
    return np.real(np.einsum("ij,pji->p", rho, ops)) / ps.d


def line_sums(w: np.ndarray, ps: PhaseSpace) -> np.ndarray:
    """Sum of W over every line, shape (d+1, d) indexed by (striation, line)."""
    w = np.asarray(w, dtype=float)
    out = np.zeros((ps.d + 1, ps.d))
    for s in ps.striations:
        for line in s.lines:
            out[s.id, line.line_id] = w[sorted(line.points)].sum()
    return out


def line_probabilities(rho, m: MubSet, ps: PhaseSpace, net: QuantumNet) -> np.ndarray:
    """Tr(Q_line rho) for every line under ``net``, same layout as line_sums."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((ps.d + 1, ps.d))
    for s in range(ps.d + 1):
        r = net.striation_to_basis[s]
        for lid in range(ps.d):
            v = m.bases[r, net.line_to_vector[s][lid]]
            out[s, lid] = np.real(np.vdot(v, rho @ v))
    return out


def reconstruct(w, m: MubSet, ps: PhaseSpace, net: QuantumNet | None = None) -> np.ndarray:
    """rho = sum_a W_a A_a."""
    net = net or QuantumNet.canonical(ps.d)
    w = np.asarray(w, dtype=float)
    if w.shape != (ps.d**2,):
        raise ValueError(f"expected {ps.d**2} Wigner values, got shape {w.shape}")
    return np.einsum("p,pij->ij", w, point_operators(m, ps, net))


def dwf_extrema(result: CensusReport | Extrema) -> tuple[float, float]:
    """(W_max, W_min) over every Wigner function definable from the MUB set."""
    if isinstance(result, CensusReport):
        d, lo, hi = result.dimension, result.lambda_min_global, result.lambda_max_global
    else:
        d, lo, hi = result.dimension, result.lambda_min, result.lambda_max
    return hi / d, lo / d


def nonnegativity_check(m: MubSet, state, allow_large: bool = False) -> float:
    """min over all d^(d+1) point operators A of <state|A|state>."""
    d = m.d
    if d > NONNEG_DEFAULT_MAX_D and not allow_large:
        raise ValueError(f"full enumeration at d={d} needs allow_large=True")
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (d,) or abs(np.linalg.norm(psi) - 1) > 1e-10:
        raise ValueError("state must be a unit vector of the MUB dimension")
    # <psi|A_c|psi> = sum_r |<v_{r,c_r}|psi>|^2 - 1, so only overlaps are needed
    probs = np.abs(m.bases.conj() @ psi) ** 2  # (d+1, d)
    best = np.inf
    for c in iter_indices(d):
        val = sum(probs[r, k] for r, k in enumerate(c)) - 1.0
        best = min(best, val)
    return float(best)
