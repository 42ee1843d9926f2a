"""Exhaustive spectra of phase-space point operators.

A point operator picks one vector from each of the d+1 bases:

    A_c = sum_r |v_{r, c_r}><v_{r, c_r}| - I

The d^(d+1) index tuples are enumerated as a base-d odometer with c_0 most
significant. The index range is cut into fixed blocks of d^t consecutive
tuples (the last t digits vary inside a block); block results are merged
with commutative, associative operations so output does not depend on the
worker count.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .geometry import PhasePoint, PhaseSpace, lines_through
from .linalg import eigvalsh_batch
from .mub import MubSet

KEY_SCALE = 10**6  # spectra grouped at 1e-6
BLOCK_TARGET = 2048
HEAVY_OPERATOR_COUNT = 10**8

ProgressFn = Callable[[int, int], None]


def operator_count(d: int) -> int:
    return d ** (d + 1)


def index_to_tuple(i: int, d: int) -> tuple[int, ...]:
    digits = []
    for _ in range(d + 1):
        i, r = divmod(i, d)
        digits.append(r)
    return tuple(reversed(digits))


def tuple_to_index(c: Sequence[int], d: int) -> int:
    i = 0
    for x in c:
        i = i * d + int(x)
    return i


def _check_index(c: Sequence[int], d: int) -> tuple[int, ...]:
    c = tuple(int(x) for x in c)
    if len(c) != d + 1 or any(not 0 <= x < d for x in c):
        raise ValueError(f"invalid point-operator index {c} for d={d}")
    return c


def point_operator(m: MubSet, c: Sequence[int]) -> np.ndarray:
    d = m.d
    c = _check_index(c, d)
    a = -np.eye(d, dtype=complex)
    for r, k in enumerate(c):
        v = m.bases[r, k]
        a += np.outer(v, v.conj())
    return a


def geometric_index(ps: PhaseSpace, net, point: PhasePoint | int) -> tuple[int, ...]:
    """Index tuple read off the d+1 lines through ``point`` under ``net``."""
    c = [0] * (ps.d + 1)
    for line in lines_through(ps, point):
        basis = net.striation_to_basis[line.striation_id]
        c[basis] = net.line_to_vector[line.striation_id][line.line_id]
    return tuple(c)


def geometric_point_operator(m: MubSet, ps: PhaseSpace, net, point: PhasePoint | int) -> np.ndarray:
    if m.d != ps.d or net.d != ps.d:
        raise ValueError(f"dimension mismatch: MUB d={m.d}, phase space d={ps.d}, net d={net.d}")
    return point_operator(m, geometric_index(ps, net, point))


def spectrum_key(eigenvalues) -> tuple[int, ...]:
    w = np.sort(np.asarray(eigenvalues, dtype=float))
    return tuple(int(x) for x in np.rint(w * KEY_SCALE))


# --- block scan -------------------------------------------------------------


@dataclass
class _Layout:
    d: int
    tail_digits: int
    n_blocks: int
    block_size: int


def _layout(d: int, block_target: int) -> _Layout:
    t = 1
    while t < d + 1 and d**t < block_target:
        t += 1
    return _Layout(d, t, d ** (d + 1 - t), d**t)


def _tail_table(projs: np.ndarray, lay: _Layout) -> np.ndarray:
    """Sum of tail projectors minus identity for every tail digit combination."""
    d, t = lay.d, lay.tail_digits
    first = d + 1 - t
    table = -np.eye(d, dtype=complex)[None]
    for r in range(first, d + 1):
        # odometer order: later basis varies fastest
        table = (table[:, None] + projs[r][None, :]).reshape(-1, d, d)
    return table


@dataclass
class _Partial:
    """Mergeable summary of a set of blocks."""

    classes: dict = field(default_factory=dict)  # key -> [count, first_index, eigenvalues]
    lmin: float = math.inf
    lmin_at: int = -1
    lmax: float = -math.inf
    lmax_at: int = -1
    block_sums: dict = field(default_factory=dict)  # block id -> sum of lambda_max
    count: int = 0

    def merge(self, other: "_Partial") -> None:
        for key, (cnt, rep, vals) in other.classes.items():
            mine = self.classes.get(key)
            if mine is None:
                self.classes[key] = [cnt, rep, vals]
            else:
                mine[0] += cnt
                if rep < mine[1]:
                    mine[1], mine[2] = rep, vals
        # ties go to the lowest enumeration index
        if other.lmin_at >= 0 and (self.lmin_at < 0 or (other.lmin, other.lmin_at) < (self.lmin, self.lmin_at)):
            self.lmin, self.lmin_at = other.lmin, other.lmin_at
        if other.lmax_at >= 0 and (self.lmax_at < 0 or (-other.lmax, other.lmax_at) < (-self.lmax, self.lmax_at)):
            self.lmax, self.lmax_at = other.lmax, other.lmax_at
        self.block_sums.update(other.block_sums)
        self.count += other.count


_WORKER_STATE: dict = {}


def _init_worker(projs: np.ndarray, block_target: int):
    d = projs.shape[1]
    lay = _layout(d, block_target)
    _WORKER_STATE["projs"] = projs
    _WORKER_STATE["layout"] = lay
    _WORKER_STATE["tail"] = _tail_table(projs, lay)


def _scan_blocks(block_ids: Iterable[int], histogram: bool) -> _Partial:
    projs = _WORKER_STATE["projs"]
    lay = _WORKER_STATE["layout"]
    tail = _WORKER_STATE["tail"]
    d, t = lay.d, lay.tail_digits
    head_len = d + 1 - t
    out = _Partial()
    for b in block_ids:
        head = np.zeros((d, d), dtype=complex)
        rest = b
        for r in range(head_len - 1, -1, -1):
            rest, k = divmod(rest, d)
            head = head + projs[r, k]
        w = eigvalsh_batch(tail + head)
        base = b * lay.block_size
        lo = w[:, 0]
        hi = w[:, -1]
        i_lo = int(np.argmin(lo))
        i_hi = int(np.argmax(hi))
        part = _Partial(
            lmin=float(lo[i_lo]),
            lmin_at=base + i_lo,
            lmax=float(hi[i_hi]),
            lmax_at=base + i_hi,
            block_sums={b: float(np.sum(hi))},
            count=len(w),
        )
        if histogram:
            keys = np.rint(w * KEY_SCALE).astype(np.int64)
            uniq, first, counts = np.unique(keys, axis=0, return_index=True, return_counts=True)
            part.classes = {
                tuple(row.tolist()): [int(cnt), base + int(f), tuple(w[f].tolist())]
                for row, f, cnt in zip(uniq, first, counts)
            }
        out.merge(part)
    return out


def _run_scan(
    m: MubSet,
    workers: int = 1,
    histogram: bool = True,
    progress: ProgressFn | None = None,
    block_target: int | None = None,
) -> _Partial:
    if workers < 1:
        raise ValueError("workers must be >= 1")
    block_target = block_target or BLOCK_TARGET
    projs = m.projectors()
    lay = _layout(m.d, block_target)
    n_chunks = min(lay.n_blocks, max(64, workers * 8))
    bounds = np.linspace(0, lay.n_blocks, n_chunks + 1).astype(int)
    chunks = [range(bounds[i], bounds[i + 1]) for i in range(n_chunks) if bounds[i] < bounds[i + 1]]
    total = _Partial()
    done = 0
    if workers == 1:
        _init_worker(projs, block_target)
        for ch in chunks:
            total.merge(_scan_blocks(ch, histogram))
            done += len(ch)
            if progress:
                progress(done, lay.n_blocks)
    else:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(projs, block_target)) as pool:
            futures = [pool.submit(_scan_blocks, ch, histogram) for ch in chunks]
            for ch, fut in zip(chunks, futures):
                total.merge(fut.result())
                done += len(ch)
                if progress:
                    progress(done, lay.n_blocks)
    assert total.count == operator_count(m.d)
    return total


def _sum_lambda_max(part: _Partial) -> float:
    return math.fsum(part.block_sums[b] for b in sorted(part.block_sums))


# --- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumClass:
    key: tuple[int, ...]  # eigenvalues in units of 1e-6, ascending
    count: int
    representative: tuple[int, ...] | None
    eigenvalues: tuple[float, ...] = ()  # unrounded spectrum of the first member

    @property
    def spectrum(self) -> tuple[float, ...]:
        return tuple(k / KEY_SCALE for k in self.key)


@dataclass(frozen=True)
class CensusReport:
    dimension: int
    mub_source: str
    classes: tuple[SpectrumClass, ...]
    lambda_min_global: float
    lambda_max_global: float
    argmin: tuple[int, ...]
    argmax: tuple[int, ...]
    sum_lambda_max: float
    total_operators: int
    elapsed_seconds: float
    workers: int

    def class_counts(self) -> dict[tuple[int, ...], int]:
        return {c.key: c.count for c in self.classes}


def _sort_classes(classes: list[SpectrumClass]) -> tuple[SpectrumClass, ...]:
    return tuple(sorted(classes, key=lambda c: (-c.key[0], c.key)))


def census(
    m: MubSet,
    workers: int = 1,
    progress: ProgressFn | None = None,
    representative_limit: int | None = 10_000,
    allow_heavy: bool = False,
) -> CensusReport:
    """Spectrum classes of all d^(d+1) point operators built from ``m``.

    Classes are ordered by descending smallest eigenvalue, then by key.
    ``representative_limit`` bounds how many classes keep a representative
    index in the report (counts are always exact).
    """
    _guard_heavy(m.d, allow_heavy)
    t0 = time.perf_counter()
    part = _run_scan(m, workers, histogram=True, progress=progress)
    d = m.d
    classes = _sort_classes(
        [SpectrumClass(key, cnt, index_to_tuple(rep, d), vals) for key, (cnt, rep, vals) in part.classes.items()]
    )
    if representative_limit is not None and len(classes) > representative_limit:
        classes = tuple(
            c if i < representative_limit else SpectrumClass(c.key, c.count, None, c.eigenvalues) for i, c in enumerate(classes)
        )
    return CensusReport(
        dimension=d,
        mub_source=m.source,
        classes=classes,
        lambda_min_global=part.lmin,
        lambda_max_global=part.lmax,
        argmin=index_to_tuple(part.lmin_at, d),
        argmax=index_to_tuple(part.lmax_at, d),
        sum_lambda_max=_sum_lambda_max(part),
        total_operators=part.count,
        elapsed_seconds=time.perf_counter() - t0,
        workers=workers,
    )


@dataclass(frozen=True)
class Extrema:
    dimension: int
    lambda_min: float
    lambda_max: float
    argmin: tuple[int, ...]
    argmax: tuple[int, ...]
    sum_lambda_max: float
    total_operators: int
    elapsed_seconds: float


def _guard_heavy(d: int, allow_heavy: bool) -> None:
    if operator_count(d) > HEAVY_OPERATOR_COUNT and not allow_heavy:
        raise HeavyRunError(d)


class HeavyRunError(RuntimeError):
    def __init__(self, d: int):
        self.d = d
        self.operators = operator_count(d)
        super().__init__(
            f"d={d} requires {self.operators:,} eigendecompositions; pass allow_heavy=True (CLI: --heavy) to run it"
        )


def extremal_eigenvalues(
    m: MubSet, workers: int = 1, progress: ProgressFn | None = None, allow_heavy: bool = False
) -> Extrema:
    """Global smallest and largest eigenvalue over the full operator set."""
    _guard_heavy(m.d, allow_heavy)
    t0 = time.perf_counter()
    part = _run_scan(m, workers, histogram=False, progress=progress)
    return Extrema(
        m.d,
        part.lmin,
        part.lmax,
        index_to_tuple(part.lmin_at, m.d),
        index_to_tuple(part.lmax_at, m.d),
        _sum_lambda_max(part),
        part.count,
        time.perf_counter() - t0,
    )


def census_equal(a: CensusReport, b: CensusReport) -> bool:
    if a.dimension != b.dimension:
        raise ValueError(f"cannot compare censuses of d={a.dimension} and d={b.dimension}")
    return a.class_counts() == b.class_counts()


def iter_indices(d: int) -> Iterable[tuple[int, ...]]:
    """All index tuples in enumeration order."""
    return itertools.product(range(d), repeat=d + 1)
