"""Phase-free n-qubit Pauli strings in symplectic (x | z) form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

_LETTER_TO_XZ = {"1": (0, 0), "I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_XZ_TO_LETTER = {(0, 0): "1", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}

_SINGLE = {
    "1": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True, order=True)
class PauliString:
    x: tuple[int, ...]
    z: tuple[int, ...]

    @classmethod
    def parse(cls, word: str) -> "PauliString":
        letters = word.replace(" ", "").upper().replace("I", "1")
        try:
            xz = [_LETTER_TO_XZ[ch] for ch in letters]
        except KeyError as exc:
            raise ValueError(f"bad Pauli letter in {word!r}") from exc
        return cls(tuple(a for a, _ in xz), tuple(b for _, b in xz))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def letters(self) -> str:
        return "".join(_XZ_TO_LETTER[(a, b)] for a, b in zip(self.x, self.z))

    @property
    def symplectic(self) -> tuple[int, ...]:
        return self.x + self.z

    def is_identity(self) -> bool:
        return not any(self.x) and not any(self.z)

    def commutes(self, other: "PauliString") -> bool:
        s = sum(a * d + b * c for a, b, c, d in zip(self.x, self.z, other.x, other.z))
        return s % 2 == 0

    def __mul__(self, other: "PauliString") -> "PauliString":
        """Product up to phase."""
        return PauliString(
            tuple(a ^ b for a, b in zip(self.x, other.x)),
            tuple(a ^ b for a, b in zip(self.z, other.z)),
        )

    def matrix(self) -> np.ndarray:
        return reduce(np.kron, (_SINGLE[ch] for ch in self.letters))

    def __str__(self):
        return self.letters

    def __repr__(self):
        return f"PauliString({self.letters!r})"


def all_pauli_strings(n: int) -> list[PauliString]:
    """The 4^n - 1 non-identity strings in letter order 1 < X < Y < Z."""
    out = []
    for word in itertools.product("1XYZ", repeat=n):
        p = PauliString.parse("".join(word))
        if not p.is_identity():
            out.append(p)
    return out


def gf2_rank(vectors: list[tuple[int, ...]]) -> int:
    rows = [int("".join(map(str, v)), 2) for v in vectors]
    rank = 0
    while rows:
        pivot = max(rows)
        if pivot == 0:
            break
        rows.remove(pivot)
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
        rank += 1
    return rank


class CommutingSet:
    """2^n - 1 pairwise commuting Pauli strings (one row of a MUB table)."""

    def __init__(self, strings):
        self.strings = tuple(PauliString.parse(s) if isinstance(s, str) else s for s in strings)
        if not self.strings:
            raise ValueError("empty commuting set")
        self.n = self.strings[0].n
        if any(s.n != self.n for s in self.strings):
            raise ValueError("mixed qubit counts in commuting set")
        if len(self.strings) != 2**self.n - 1:
            raise ValueError(f"expected {2**self.n - 1} strings, got {len(self.strings)}")
        if len(set(self.strings)) != len(self.strings):
            raise ValueError("duplicate strings in commuting set")
        for a, b in itertools.combinations(self.strings, 2):
            if not a.commutes(b):
                raise ValueError(f"{a} and {b} do not commute")
        self.generators = self._select_generators()
        group = generated_group(self.generators)
        if group != set(self.strings):
            missing = sorted(str(p) for p in group - set(self.strings))
            raise ValueError(f"set is not a group minus identity; missing {missing}")

    def _select_generators(self) -> tuple[PauliString, ...]:
        gens: list[PauliString] = []
        for s in self.strings:
            if gf2_rank([g.symplectic for g in gens + [s]]) == len(gens) + 1:
                gens.append(s)
            if len(gens) == self.n:
                break
        if len(gens) != self.n:
            raise ValueError("commuting set has fewer than n independent strings")
        return tuple(gens)

    def key(self) -> tuple[PauliString, ...]:
        return tuple(sorted(self.strings))

    def __iter__(self):
        return iter(self.strings)

    def __len__(self):
        return len(self.strings)

    def __repr__(self):
        return "CommutingSet(" + " ".join(map(str, self.strings)) + ")"


def generated_group(gens) -> set[PauliString]:
    """Products of all non-empty subsets of ``gens`` (up to phase), minus identity."""
    out = set()
    for mask in range(1, 2 ** len(gens)):
        prod = None
        for k, g in enumerate(gens):
            if (mask >> k) & 1:
                prod = g if prod is None else prod * g
        if not prod.is_identity():
            out.add(prod)
    return out


PAULI_TABLE_D4 = [
    ["XX", "X1", "1X"],
    ["ZZ", "Z1", "1Z"],
    ["YY", "Y1", "1Y"],
    ["XY", "YZ", "ZX"],
    ["XZ", "YX", "ZY"],
]

# Three-qubit partition. Row 7 entry 4 is YY1, the product XZZ*XZ1*YYZ that
# closes the row; a common transcription repeats XY1 from row 5 there instead.
PAULI_TABLE_D8 = [
    ["XXX", "XX1", "X1X", "X11", "1XX", "1X1", "11X"],
    ["XXY", "XYX", "YXX", "YYY", "ZZ1", "Z1Z", "1ZZ"],
    ["XXZ", "XYY", "YZ1", "Y1X", "ZXY", "ZYZ", "1ZX"],
    ["XYZ", "XZX", "YX1", "Y1Y", "ZYX", "ZZZ", "1XY"],
    ["XY1", "X1Z", "YXY", "YZX", "ZXX", "ZZY", "1YZ"],
    ["XZY", "X1Y", "YZZ", "Y1Z", "ZZX", "Z1X", "1Z1"],
    ["XZZ", "XZ1", "YYZ", "YY1", "ZXZ", "ZX1", "11Z"],
    ["YXZ", "YYX", "YZY", "Y11", "1XZ", "1YX", "1ZY"],
    ["ZYY", "ZY1", "Z1Y", "Z11", "1YY", "1Y1", "11Y"],
]

PAULI_TABLE_D8_TRANSCRIPTION_ERROR = [row[:] for row in PAULI_TABLE_D8]
PAULI_TABLE_D8_TRANSCRIPTION_ERROR[6][3] = "XY1"


def table_rows(table) -> list[CommutingSet]:
    return [CommutingSet(row) for row in table]


def check_cover(rows: list[CommutingSet]) -> None:
    """Raise unless the rows partition all non-identity n-qubit strings."""
    n = rows[0].n
    if len(rows) != 2**n + 1:
        raise ValueError(f"expected {2**n + 1} rows, got {len(rows)}")
    seen: dict[PauliString, int] = {}
    for i, row in enumerate(rows):
        for s in row:
            if s in seen:
                raise ValueError(f"{s} appears in rows {seen[s]} and {i}")
            seen[s] = i
    missing = set(all_pauli_strings(n)) - set(seen)
    if missing:
        raise ValueError(f"strings not covered: {sorted(map(str, missing))}")


def enumerate_pauli_partitions(n: int = 2) -> list[list[CommutingSet]]:
    """All partitions of the 15 two-qubit strings into 5 commuting triples.

    Exhaustive backtracking over maximal commuting subgroups; partitions and
    their rows are returned in canonical (sorted) order.
    """
    if n != 2:
        raise ValueError("partition enumeration is only supported for n = 2")
    strings = all_pauli_strings(n)
    # all commuting sets that are a group minus identity
    groups = set()
    for a, b in itertools.combinations(strings, 2):
        if a.commutes(b):
            groups.add(tuple(sorted(generated_group([a, b]))))
    groups = sorted(g for g in groups if len(g) == 2**n - 1)

    results = []

    def search(remaining: frozenset, chosen: list):
        if not remaining:
            results.append(sorted(chosen))
            return
        first = min(remaining)
        for g in groups:
            if first in g and all(s in remaining for s in g):
                search(remaining - set(g), chosen + [g])

    search(frozenset(strings), [])
    results.sort()
    return [[CommutingSet(list(g)) for g in part] for part in results]
