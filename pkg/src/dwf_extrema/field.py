"""Exact arithmetic in GF(p^n), used to label phase-space coordinates.

Elements are stored as coefficient tuples (low degree first) over Z_p and
reduced modulo a fixed monic irreducible polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

# Default moduli, low-to-high coefficients.
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
}


class FieldError(ValueError):
    """Invalid field specification or illegal field operation."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def prime_power(d: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``p**n == d``, or None if d is not a prime power."""
    if d < 2:
        return None
    for p in range(2, d + 1):
        if d % p == 0:
            if not is_prime(p):
                return None
            n, rest = 0, d
            while rest % p == 0:
                rest //= p
                n += 1
            return (p, n) if rest == 1 else None
    return None


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over Z_p."""
    r = _trim([x % p for x in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, mi in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * mi) % p
        _trim(r)
    return r


def _monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..n//2."""
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p != 1:
        return False
    for deg in range(1, n // 2 + 1):
        for f in _monic_polys(p, deg):
            if not _poly_mod(modulus, f, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) with a fixed monic irreducible modulus of degree n."""

    p: int
    n: int
    modulus: tuple[int, ...]
    d: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.n}")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise FieldError(f"modulus {self.modulus} is not monic of degree {self.n}")
        if not is_irreducible(mod, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over Z_{self.p}")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "d", self.p**self.n)

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        """Build an element from its canonical index or a coefficient list."""
        if isinstance(value, int):
            if not 0 <= value < self.d:
                raise FieldError(f"index {value} out of range for GF({self.d})")
            coeffs = []
            for _ in range(self.n):
                value, r = divmod(value, self.p)
                coeffs.append(r)
            return FieldElement(tuple(coeffs), self)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            raise FieldError(f"too many coefficients for GF({self.d})")
        coeffs += [0] * (self.n - len(coeffs))
        return FieldElement(tuple(coeffs), self)

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    def __repr__(self):
        return f"FieldSpec(p={self.p}, n={self.n}, modulus={self.modulus})"


def field_make(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Return the field spec for GF(p^n).

    Prime fields use the modulus ``x``; GF(4), GF(8) and GF(9) have table
    defaults. Any other extension needs an explicit ``modulus``.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if modulus is None:
        if n == 1:
            modulus = (0, 1)
        elif (p, n) in MODULUS_TABLE:
            modulus = MODULUS_TABLE[(p, n)]
        else:
            raise FieldError(f"no default modulus for GF({p}^{n}); pass one explicitly")
    return FieldSpec(p, n, tuple(modulus))


def field_for_dimension(d: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    pn = prime_power(d)
    if pn is None:
        raise FieldError(f"no finite field of order {d}")
    return field_make(*pn, modulus=modulus)


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    spec: FieldSpec

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError("elements belong to different fields")

    @property
    def index(self) -> int:
        """Position in canonical order: coefficients read as a base-p integer."""
        p = self.spec.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.spec)

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)), self.spec)

    def __neg__(self):
        p = self.spec.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.spec)

    def __mul__(self, other):
        self._check(other)
        s = self.spec
        prod = [0] * (2 * s.n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return s.element(_poly_mod(prod, s.modulus, s.p))

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        # a^(d-2) = a^-1 in a field of order d
        result, base, e = self.spec.one, self, self.spec.d - 2
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return " + ".join(reversed(terms)) or "0"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All d elements in canonical (base-p integer) order."""
    return [spec.element(i) for i in range(spec.d)]
