"""(d+1) -> d quantum random access codes from point-operator eigenvectors.

Alice encodes a message c (one digit per basis) as the top eigenvector of
A_c; Bob decodes digit r by measuring in basis r.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .census import _check_index, extremal_eigenvalues, operator_count, point_operator
from .linalg import eigh_batch
from .mub import MubSet

SIM_BLOCK = 1 << 15


@dataclass(frozen=True)
class QracReport:
    d: int
    p_q_exact: float
    p_q_empirical: float | None = None
    trials: int | None = None
    seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "p_q_exact": self.p_q_exact,
            "p_q_empirical": self.p_q_empirical,
            "trials": self.trials,
            "seed": self.seed,
        }


class QracCode:
    def __init__(self, m: MubSet):
        self.mub = m
        self.d = m.d
        self._projs = m.projectors()

    @property
    def n_messages(self) -> int:
        return operator_count(self.d)

    def encode(self, message: Sequence[int]) -> np.ndarray:
        """Top eigenvector of A_message (last column of the ascending eigh)."""
        c = _check_index(message, self.d)
        _, v = np.linalg.eigh(point_operator(self.mub, c))
        return v[:, -1]

    def encode_batch(self, messages: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Top eigenvalues and eigenvectors for an (N, d+1) array of messages."""
        d = self.d
        mats = np.broadcast_to(-np.eye(d, dtype=complex), (len(messages), d, d)).copy()
        for r in range(d + 1):
            mats += self._projs[r][messages[:, r]]
        w, v = eigh_batch(mats)
        return w[:, -1], v[:, :, -1]

    def decode_probabilities(self, psi: np.ndarray, basis: int) -> np.ndarray:
        return np.abs(self.mub.bases[basis].conj() @ psi) ** 2

    def success_probability(self, message: Sequence[int]) -> float:
        """Average over Bob's d+1 basis choices of decoding the right digit."""
        c = _check_index(message, self.d)
        psi = self.encode(c)
        return float(np.mean([self.decode_probabilities(psi, r)[k] for r, k in enumerate(c)]))


def qrac_rate(m: MubSet, workers: int = 1, allow_heavy: bool = False, progress=None) -> QracReport:
    """p_q = (1/d^(d+1)) (1/(d+1)) sum over all A of (lambda_max + 1)."""
    ext = extremal_eigenvalues(m, workers=workers, progress=progress, allow_heavy=allow_heavy)
    return QracReport(m.d, p_q_from_sum(m.d, ext.sum_lambda_max))


def p_q_from_sum(d: int, sum_lambda_max: float) -> float:
    n = operator_count(d)
    return (sum_lambda_max / n + 1.0) / (d + 1)


def _simulate_block(mub_bases: np.ndarray, source: str, seed: int, block: int, n: int) -> int:
    code = QracCode(MubSet(mub_bases, source))
    d = code.d
    rng = np.random.default_rng(np.random.SeedSequence([seed, block]))
    msg_idx = rng.integers(0, code.n_messages, size=n)
    digits = _digits(msg_idx, d)
    _, psi = code.encode_batch(digits)
    basis = rng.integers(0, d + 1, size=n)
    # outcome k with probability |<v_{r,k}|psi>|^2
    probs = np.abs(np.einsum("nkj,nj->nk", code.mub.bases[basis].conj(), psi)) ** 2
    cdf = np.cumsum(probs, axis=1)
    u = rng.random(n) * cdf[:, -1]
    outcome = np.minimum((cdf < u[:, None]).sum(axis=1), d - 1)
    target = digits[np.arange(n), basis]
    return int(np.count_nonzero(outcome == target))


def _digits(idx: np.ndarray, d: int) -> np.ndarray:
    out = np.empty((len(idx), d + 1), dtype=np.int64)
    rest = idx.astype(np.int64)
    for r in range(d, -1, -1):
        rest, out[:, r] = np.divmod(rest, d)
    return out


def simulate(
    m: MubSet, trials: int, seed: int, workers: int = 1, p_q_exact: float | None = None
) -> QracReport:
    """Monte Carlo run of the protocol.

    Trials are split into fixed blocks, each with its own generator seeded
    from (seed, block id), so the result depends only on ``seed`` and
    ``trials``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sizes = [SIM_BLOCK] * (trials // SIM_BLOCK)
    if trials % SIM_BLOCK:
        sizes.append(trials % SIM_BLOCK)
    args = [(m.bases, m.source, seed, b, n) for b, n in enumerate(sizes)]
    if workers == 1:
        successes = sum(_simulate_block(*a) for a in args)
    else:
        with ProcessPoolExecutor(workers) as pool:
            successes = sum(pool.map(_simulate_block, *zip(*args)))
    if p_q_exact is None:
        p_q_exact = qrac_rate(m).p_q_exact if operator_count(m.d) <= 10**7 else float("nan")
    return QracReport(m.d, p_q_exact, successes / trials, trials, seed)


def classical_3to1_optimum() -> Fraction:
    """Best average success of a deterministic classical 3 -> 1 bit code.

    Searches all 2^8 encoders {0,1}^3 -> {0,1} and all 4^3 decoder triples.
    """
    messages = list(itertools.product((0, 1), repeat=3))
    decoders = list(itertools.product((0, 1), repeat=2))  # (f(0), f(1))
    best = Fraction(0)
    for enc in itertools.product((0, 1), repeat=8):
        for dec in itertools.product(decoders, repeat=3):
            hits = sum(dec[i][enc[j]] == msg[i] for j, msg in enumerate(messages) for i in range(3))
            best = max(best, Fraction(hits, 24))
    return best


def classical_protocol_count() -> int:
    return 2**8 * 4**3
