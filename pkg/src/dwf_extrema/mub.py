"""Complete sets of d+1 mutually unbiased bases."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .field import is_prime
from .pauli import PAULI_TABLE_D4, PAULI_TABLE_D8, CommutingSet, check_cover, table_rows

FILE_TOL = 1e-8


class MubError(ValueError):
    pass


@dataclass(frozen=True)
class MubSet:
    """``bases[r, k]`` is vector k of basis r; shape (d+1, d, d)."""

    bases: np.ndarray
    source: str

    def __post_init__(self):
        b = np.asarray(self.bases, dtype=complex)
        if b.ndim != 3 or b.shape[1] != b.shape[2] or b.shape[0] != b.shape[1] + 1:
            raise MubError(f"expected shape (d+1, d, d), got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "bases", b)

    @property
    def d(self) -> int:
        return self.bases.shape[1]

    def vector(self, r: int, k: int) -> np.ndarray:
        return self.bases[r, k]

    def projectors(self) -> np.ndarray:
        """All (d+1)*d rank-one projectors, shape (d+1, d, d, d)."""
        return np.einsum("rki,rkj->rkij", self.bases, self.bases.conj())


@dataclass(frozen=True)
class MubReport:
    orthonormality_deviation: float
    unbiasedness_deviation: float

    @property
    def max_deviation(self) -> float:
        return max(self.orthonormality_deviation, self.unbiasedness_deviation)

    def passes(self, tol: float = 1e-10) -> bool:
        return self.max_deviation <= tol


def verify_mub(m: MubSet) -> MubReport:
    """Max deviation of |<v_ij|v_kl>|^2 from delta_jl (same basis) and 1/d."""
    d = m.d
    b = m.bases.reshape(-1, d)
    overlaps = np.abs(b.conj() @ b.T) ** 2
    basis_of = np.repeat(np.arange(d + 1), d)
    same = basis_of[:, None] == basis_of[None, :]
    ortho = np.abs(overlaps - np.eye(len(b)))[same].max()
    cross = np.abs(overlaps - 1.0 / d)[~same].max()
    return MubReport(float(ortho), float(cross))


def mub_prime(d: int) -> MubSet:
    """Ivanovic's construction for odd prime d.

    Basis 0 is computational; basis r in 1..d-1 has components
    exp(2 pi i (r j^2 + j k) / d) / sqrt(d); basis d drops the quadratic term.
    """
    if not is_prime(d):
        raise MubError(f"{d} is not prime")
    if d == 2:
        raise MubError("the quadratic-phase formula degenerates at d=2; use mub_qubit()")
    j = np.arange(d)[None, :]
    k = np.arange(d)[:, None]
    bases = [np.eye(d, dtype=complex)]
    for r in range(1, d):
        bases.append(np.exp(2j * np.pi * ((r * j * j + j * k) % d) / d) / np.sqrt(d))
    bases.append(np.exp(2j * np.pi * ((j * k) % d) / d) / np.sqrt(d))
    return MubSet(np.array(bases), "ivanovic")


def mub_qubit() -> MubSet:
    """Z, X, Y eigenbases, in that order."""
    s = 1 / np.sqrt(2)
    bases = [
        [[1, 0], [0, 1]],
        [[s, s], [s, -s]],
        [[s, 1j * s], [s, -1j * s]],
    ]
    return MubSet(np.array(bases, dtype=complex), "pauli-table")


def _fix_phase(v: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    ph = v[nz[0]] / abs(v[nz[0]])
    return v / ph


def basis_from_commuting_set(row: CommutingSet) -> np.ndarray:
    """Common eigenbasis of a commuting set, shape (2^n, 2^n).

    Vector index for sign pattern s over the generators is
    sum_k (1 - s_k)/2 * 2^(n-1-k).
    """
    n = row.n
    dim = 2**n
    gens = [g.matrix() for g in row.generators]
    out = np.zeros((dim, dim), dtype=complex)
    for idx in range(dim):
        proj = np.eye(dim, dtype=complex)
        for k, g in enumerate(gens):
            sign = -1 if (idx >> (n - 1 - k)) & 1 else 1
            proj = proj @ (np.eye(dim) + sign * g) / 2
        rank = int(round(np.trace(proj).real))
        if rank != 1:
            raise MubError(f"projector for sign pattern {idx} of {row} has rank {rank}")
        col = proj[:, np.argmax(np.linalg.norm(proj, axis=0))]
        out[idx] = _fix_phase(col / np.linalg.norm(col))
    return out


def mub_from_pauli_table(rows) -> MubSet:
    """One basis per row of commuting Pauli strings."""
    rows = [r if isinstance(r, CommutingSet) else CommutingSet(r) for r in rows]
    check_cover(rows)
    return MubSet(np.array([basis_from_commuting_set(r) for r in rows]), "pauli-table")


def default_mub(d: int) -> MubSet:
    """The reference set for each supported dimension."""
    if d == 2:
        return mub_qubit()
    if d == 4:
        return mub_from_pauli_table(table_rows(PAULI_TABLE_D4))
    if d == 8:
        return mub_from_pauli_table(table_rows(PAULI_TABLE_D8))
    if d in (3, 5, 7) or (is_prime(d) and d > 2):
        return mub_prime(d)
    raise MubError(f"no built-in MUB construction for d={d}")


def mub_to_json(m: MubSet) -> dict:
    return {
        "dimension": m.d,
        "source": m.source,
        "bases": [[[[float(z.real), float(z.imag)] for z in vec] for vec in basis] for basis in m.bases],
    }


def mub_from_json(doc: dict, tol: float = FILE_TOL) -> MubSet:
    try:
        d = int(doc["dimension"])
        raw = np.asarray(doc["bases"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MubError(f"malformed MUB document: {exc}") from exc
    if raw.shape != (d + 1, d, d, 2):
        raise MubError(f"bases array has shape {raw.shape}, expected {(d + 1, d, d, 2)}")
    m = MubSet(raw[..., 0] + 1j * raw[..., 1], "file")
    report = verify_mub(m)
    if not report.passes(tol):
        raise MubError(f"file does not hold a MUB set (max deviation {report.max_deviation:.3g})")
    return m


def load_mub(path) -> MubSet:
    return mub_from_json(json.loads(Path(path).read_text()))


def save_mub(m: MubSet, path) -> None:
    Path(path).write_text(json.dumps(mub_to_json(m), indent=1))
